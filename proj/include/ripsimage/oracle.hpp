#pragma once

#include <vector>

#include "ripsimage/barcode.hpp"
#include "ripsimage/distance_matrix.hpp"
#include "ripsimage/prime_field.hpp"

namespace ripsimage {

// ranks of the maps H_degree(domain complex at scale s) -> H_degree(codomain complex at scale t)
// over a finite grid of scales; rank[a][b] is defined for a <= b only
struct rank_grid {
	index_t degree;
	std::vector<value_t> scales;             // strictly increasing, last entry is a sentinel
	std::vector<std::vector<index_t>> rank;  // rank[a][b - a] for b in [a, scales.size())
};

class oracle_size_error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

// total number of simplices of dimension <= max_dim + 1 the oracle will materialize
index_t oracle_universe_size(index_t n, index_t max_dim, value_t threshold,
                             const distance_matrix& domain);

constexpr index_t oracle_size_limit = 20000;

// rank of H_degree(L_s) -> H_degree(K_t) by dense elimination mod p; requires s <= t
index_t induced_rank(const filtration_pair& pair, index_t degree, value_t s, value_t t,
                     const prime_field& field, value_t threshold = infinite_value);

rank_grid build_rank_grid(const filtration_pair& pair, index_t degree, const prime_field& field,
                          value_t threshold = infinite_value, bool parallel = true);

// barcode of the persistence module described by a rank grid, by inclusion-exclusion
// on interval multiplicities; negative multiplicity throws internal_error
std::vector<interval> barcode_from_ranks(const rank_grid& grid);

// ground-truth image barcode in degrees 0..max_dim
barcode image_barcode_oracle(const filtration_pair& pair, index_t max_dim, coefficient_t modulus,
                             value_t threshold = infinite_value, bool parallel = true);

}
