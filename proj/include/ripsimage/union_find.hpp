#pragma once

#include <numeric>
#include <utility>
#include <vector>

#include "ripsimage/common.hpp"

namespace ripsimage {

// union by size with path compression; ties keep the smaller root so that
// merge outcomes (and the witnesses derived from them) are deterministic
class union_find {
public:
	explicit union_find(index_t n) : parent_(n), size_(n, 1) {
		std::iota(parent_.begin(), parent_.end(), index_t{0});
	}

	index_t find(index_t x) {
		index_t root = x;
		while (parent_[root] != root) root = parent_[root];
		while (parent_[x] != root) x = std::exchange(parent_[x], root);
		return root;
	}

	// merges the classes of two roots, returns the root that stopped being one
	index_t link(index_t u, index_t v) {
		index_t dying = (size_[u] < size_[v] || (size_[u] == size_[v] && u > v)) ? u : v;
		index_t surviving = dying == u ? v : u;
		parent_[dying] = surviving;
		size_[surviving] += size_[dying];
		return dying;
	}

private:
	std::vector<index_t> parent_;
	std::vector<index_t> size_;
};

}
