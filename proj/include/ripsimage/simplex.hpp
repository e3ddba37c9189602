#pragma once

#include <algorithm>
#include <span>
#include <unordered_map>
#include <vector>

#include "ripsimage/distance_matrix.hpp"
#include "ripsimage/prime_field.hpp"
#include "ripsimage/sparse_column.hpp"

namespace ripsimage {

class binomial_table {
public:
	binomial_table(index_t n, index_t k) : table_(n + 1, std::vector<index_t>(k + 1, 0)) {
		for (index_t i = 0; i <= n; ++i) {
			table_[i][0] = 1;
			for (index_t j = 1; j <= std::min(i, k); ++j)
				table_[i][j] = table_[i - 1][j - 1] + table_[i - 1][j];
		}
	}

	index_t operator()(index_t n, index_t k) const {
		if (k < 0 || n < 0 || k > n) return 0;
		if (n >= static_cast<index_t>(table_.size()) ||
		    k >= static_cast<index_t>(table_[0].size()))
			throw std::out_of_range("binomial table too small");
		return table_[n][k];
	}

private:
	std::vector<std::vector<index_t>> table_;
};

// a d-simplex is the rank of its vertex set in the combinatorial number system:
// index = sum of binomial(v_i, i+1) over vertices v_0 > v_1 > ... > v_d
index_t simplex_index(std::span<const index_t> descending_vertices, const binomial_table& binomial);

// vertices in strictly decreasing order
std::vector<index_t> simplex_vertices(index_t index, index_t dim, index_t n,
                                      const binomial_table& binomial);

value_t simplex_diameter(index_t index, index_t dim, const distance_matrix& dist,
                         const binomial_table& binomial);

struct ordered_simplex {
	index_t index;
	value_t value;  // diameter under the order's metric
};

// filtration order: value ascending, ties by combinatorial index descending
inline bool filtration_less(const ordered_simplex& a, const ordered_simplex& b) {
	return a.value < b.value || (a.value == b.value && a.index > b.index);
}

// reverse filtration order (row/column order of the coboundary matrices)
inline bool reverse_filtration_less(const ordered_simplex& a, const ordered_simplex& b) {
	return a.value > b.value || (a.value == b.value && a.index < b.index);
}

enum class order_direction { filtration, reverse_filtration };

// all dim-simplices with diameter <= threshold, sorted by the requested direction
class filtration_order {
public:
	filtration_order(index_t dim, std::vector<ordered_simplex> simplices);

	index_t dim() const { return dim_; }
	const std::vector<ordered_simplex>& simplices() const { return simplices_; }
	std::size_t size() const { return simplices_.size(); }

	// position of a simplex within this order; missing index throws std::out_of_range
	std::size_t position(index_t simplex) const;
	bool contains(index_t simplex) const { return position_.count(simplex) > 0; }

private:
	index_t dim_;
	std::vector<ordered_simplex> simplices_;
	std::unordered_map<index_t, std::size_t> position_;
};

filtration_order build_order(const distance_matrix& dist, index_t dim, value_t threshold,
                             order_direction direction, const binomial_table& binomial,
                             bool parallel = true);

// cofacets of a simplex in decreasing combinatorial index order
class cofacet_enumerator {
public:
	cofacet_enumerator(index_t simplex_index, index_t dim, index_t n, const binomial_table& binomial);

	struct cofacet {
		index_t index;
		index_t vertex;  // the vertex added to the simplex
		bool negative;   // boundary coefficient of the simplex in the cofacet is -1
	};

	bool has_next() const { return vertex_ >= 0; }
	cofacet next();

	const std::vector<index_t>& vertices() const { return vertices_; }

private:
	void skip_to_valid();

	const binomial_table& binomial_;
	std::vector<index_t> vertices_;  // of the simplex, decreasing
	index_t dim_, vertex_, k_, idx_below_, idx_above_;
};

// coboundary of s as a column over row_order positions; cofacets whose
// row_metric diameter exceeds threshold or which are absent from row_order are dropped
sparse_column coboundary_column(index_t simplex, index_t dim, const filtration_order& row_order,
                                const distance_matrix& row_metric, value_t threshold,
                                const prime_field& field, const binomial_table& binomial);

}
