#pragma once

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "ripsimage/sparse_column.hpp"

namespace ripsimage {

// R = D * V with V upper unitriangular and all nonzero columns of R having distinct pivots
struct reduced_decomposition {
	std::vector<sparse_column> reduced;                 // R
	std::vector<sparse_column> coefficients;            // V, empty unless tracked
	std::unordered_map<index_t, std::size_t> pivot_of;  // pivot row -> column holding it

	bool is_zero(std::size_t j) const { return reduced[j].empty(); }
};

// left-to-right column reduction over F_p
reduced_decomposition reduce_matrix(std::vector<sparse_column> columns, const prime_field& field,
                                    bool track_coefficients = false);

// zero out the listed columns; indices out of range throw std::out_of_range
void clear_columns(std::vector<sparse_column>& columns, const std::vector<std::size_t>& to_clear);

enum class grading_direction { homological, cohomological };

// blocks[d] holds the (co)boundary columns of the degree-d basis elements;
// row indices of blocks[d] refer to the adjacent degree's columns
// (d+1 when cohomological, d-1 when homological)
struct graded_reduction {
	std::vector<reduced_decomposition> blocks;
	std::vector<std::vector<std::size_t>> cleared;  // per degree, columns zeroed by clearing
};

graded_reduction reduce_with_clearing(std::vector<std::vector<sparse_column>> blocks,
                                      grading_direction direction, const prime_field& field,
                                      bool track_coefficients = false);

}
