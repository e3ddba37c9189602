#pragma once

#include <optional>
#include <vector>

#include "ripsimage/prime_field.hpp"

namespace ripsimage {

struct column_entry {
	index_t row;
	coefficient_t coefficient;

	bool operator==(const column_entry&) const = default;
};

// entries strictly ascending by row, coefficients nonzero; pivot = largest row
class sparse_column {
public:
	sparse_column() = default;

	// entries may arrive unsorted or with repeats; repeats are summed mod p
	static sparse_column from_entries(std::vector<column_entry> entries, const prime_field& field);

	bool empty() const { return entries_.empty(); }
	std::size_t size() const { return entries_.size(); }
	const std::vector<column_entry>& entries() const { return entries_; }

	std::optional<index_t> pivot() const {
		if (entries_.empty()) return std::nullopt;
		return entries_.back().row;
	}

	coefficient_t pivot_coefficient() const {
		if (entries_.empty()) throw internal_error("pivot_coefficient of empty column");
		return entries_.back().coefficient;
	}

	coefficient_t coefficient_at(index_t row) const;

	// this += lambda * other
	void axpy(const sparse_column& other, coefficient_t lambda, const prime_field& field);

	void scale(coefficient_t lambda, const prime_field& field);

	bool operator==(const sparse_column&) const = default;

private:
	std::vector<column_entry> entries_;
};

}
