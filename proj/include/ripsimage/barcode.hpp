#pragma once

#include <vector>

#include "ripsimage/common.hpp"

namespace ripsimage {

// half-open interval [birth, death) of a degree-d feature; death = infinite_value
// when the feature persists beyond the computed range
struct interval {
	index_t degree;
	value_t birth;
	value_t death;
	std::vector<index_t> birth_vertices;  // witness simplices, empty when not recorded
	std::vector<index_t> death_vertices;

	bool essential() const { return death == infinite_value; }
	bool operator==(const interval&) const = default;
};

struct barcode {
	std::vector<interval> intervals;

	// (degree, birth, death, witnesses) ascending; infinite deaths last within a degree+birth
	void sort_canonical();

	std::vector<interval> in_degree(index_t degree) const;

	// multiset equality on (degree, birth, death), witnesses ignored
	static bool same_intervals(const barcode& a, const barcode& b);

	// every (degree, birth, death) of a appears in b with at least the same multiplicity
	static bool intervals_included(const barcode& a, const barcode& b);
};

}
