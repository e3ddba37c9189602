#pragma once

#include <cstddef>
#include <vector>

#include "ripsimage/barcode.hpp"
#include "ripsimage/distance_matrix.hpp"
#include "ripsimage/prime_field.hpp"
#include "ripsimage/reduction.hpp"
#include "ripsimage/simplex.hpp"

namespace ripsimage {

struct pipeline_options {
	index_t max_dim = 1;
	value_t threshold = infinite_value;
	coefficient_t modulus = 2;
	bool clearing = true;
	bool emergent_shortcut = true;
	bool witnesses = true;
	bool parallel = true;
};

// per-degree counters, plus the zero-column sets the invariants are stated on
struct degree_stats {
	index_t degree = 0;
	std::size_t columns = 0;
	std::size_t cleared = 0;
	std::size_t domain_zero_columns = 0;
	std::size_t shortcut_hits_domain = 0;
	std::size_t shortcut_hits_image = 0;
	std::vector<index_t> domain_zeros;  // simplex indices, domain pass
	std::vector<index_t> image_zeros;   // simplex indices, image pass (empty when clearing)
};

struct pipeline_stats {
	std::vector<degree_stats> degrees;
};

// barcode of a single Vietoris-Rips filtration in degrees 0..max_dim
barcode compute_single_barcode(const distance_matrix& dist, const pipeline_options& options,
                               pipeline_stats* stats = nullptr);

// barcode of the image of H_*(inclusion) for the dominated pair, via coboundary
// reduction of the two matrices with clearing and emergent-pair shortcuts;
// dominance violation throws std::invalid_argument
barcode compute_image_barcode(const filtration_pair& pair, const pipeline_options& options,
                              pipeline_stats* stats = nullptr);

// boundary-matrix reference path over explicit columns; meant for small instances
barcode compute_image_barcode_homology(const filtration_pair& pair,
                                       const pipeline_options& options);

// interval assembly rules shared by the reference path and tests: finite bars from
// nonzero image columns, essential bars from zero non-pivot domain columns.
// image_block columns and domain_block columns are indexed identically (reverse
// domain order); image pivots are positions into image_rows, domain column j's
// birth simplex is columns.simplices()[j].
std::vector<interval> assemble_intervals(const reduced_decomposition& image_block,
                                         const reduced_decomposition& domain_block,
                                         const filtration_order& columns,
                                         const filtration_order& image_rows,
                                         const std::vector<bool>& domain_column_is_prior_pivot,
                                         index_t degree, index_t n, const binomial_table& binomial,
                                         bool witnesses);

}
