#pragma once

#include <string_view>
#include <vector>

#include "ripsimage/common.hpp"

namespace ripsimage {

// finite symmetric dissimilarity matrix with zero diagonal
class distance_matrix {
public:
	distance_matrix() : n_(0) {}
	explicit distance_matrix(index_t n) : n_(n), entries_(static_cast<std::size_t>(n) * n, 0) {}

	// entries = strictly lower triangle, row by row: d(1,0), d(2,0), d(2,1), ...
	static distance_matrix from_lower_triangle(index_t n, const std::vector<value_t>& entries);

	index_t size() const { return n_; }

	value_t operator()(index_t i, index_t j) const {
		return entries_[static_cast<std::size_t>(i) * n_ + j];
	}

	void set(index_t i, index_t j, value_t d) {
		entries_[static_cast<std::size_t>(i) * n_ + j] = d;
		entries_[static_cast<std::size_t>(j) * n_ + i] = d;
	}

private:
	index_t n_;
	std::vector<value_t> entries_;
};

enum class input_format { lower_distance, full_matrix, point_cloud };

// text: '#' starts a comment, values separated by whitespace or commas;
// lower_distance = strictly lower triangle, row i holding i entries;
// full_matrix = n rows of n entries, symmetric within 1e-12 relative, zero diagonal;
// point_cloud = one point per row, Euclidean distances
distance_matrix parse_distance_input(std::string_view text, input_format format);

struct dominance_violation {
	index_t i, j;
	value_t domain_value, codomain_value;
};

struct dominance_report {
	bool ok;
	std::vector<dominance_violation> violations;  // at most 10, smallest (i,j) first
};

// checks domain >= codomain entrywise; size mismatch throws std::invalid_argument
dominance_report validate_dominance(const distance_matrix& domain, const distance_matrix& codomain);

// domain dissimilarity dominating the codomain one; guarantees the inclusion of filtrations
struct filtration_pair {
	distance_matrix domain;    // larger distances, filtration included into the other
	distance_matrix codomain;  // smaller distances
};

}
