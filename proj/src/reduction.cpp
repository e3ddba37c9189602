#include "ripsimage/reduction.hpp"

#include <algorithm>

namespace ripsimage {

sparse_column sparse_column::from_entries(std::vector<column_entry> entries,
                                          const prime_field& field) {
	std::sort(entries.begin(), entries.end(),
	          [](const column_entry& a, const column_entry& b) { return a.row < b.row; });
	sparse_column column;
	for (const column_entry& e : entries) {
		coefficient_t c = field.normalize(e.coefficient);
		if (!column.entries_.empty() && column.entries_.back().row == e.row) {
			column.entries_.back().coefficient = field.add(column.entries_.back().coefficient, c);
			if (column.entries_.back().coefficient == 0) column.entries_.pop_back();
		} else if (c != 0) {
			column.entries_.push_back({e.row, c});
		}
	}
	return column;
}

coefficient_t sparse_column::coefficient_at(index_t row) const {
	auto it = std::lower_bound(
	    entries_.begin(), entries_.end(), row,
	    [](const column_entry& e, index_t r) { return e.row < r; });
	return it != entries_.end() && it->row == row ? it->coefficient : 0;
}

void sparse_column::axpy(const sparse_column& other, coefficient_t lambda,
                         const prime_field& field) {
	lambda = field.normalize(lambda);
	if (lambda == 0 || other.empty()) return;
	std::vector<column_entry> merged;
	merged.reserve(entries_.size() + other.entries_.size());
	auto a = entries_.cbegin();
	auto b = other.entries_.cbegin();
	while (a != entries_.end() || b != other.entries_.end()) {
		if (b == other.entries_.end() || (a != entries_.end() && a->row < b->row)) {
			merged.push_back(*a++);
		} else if (a == entries_.end() || b->row < a->row) {
			merged.push_back({b->row, field.mul(lambda, b->coefficient)});
			++b;
		} else {
			coefficient_t c = field.add(a->coefficient, field.mul(lambda, b->coefficient));
			if (c != 0) merged.push_back({a->row, c});
			++a, ++b;
		}
	}
	entries_ = std::move(merged);
}

void sparse_column::scale(coefficient_t lambda, const prime_field& field) {
	lambda = field.normalize(lambda);
	if (lambda == 0) {
		entries_.clear();
		return;
	}
	for (column_entry& e : entries_) e.coefficient = field.mul(e.coefficient, lambda);
}

reduced_decomposition reduce_matrix(std::vector<sparse_column> columns, const prime_field& field,
                                    bool track_coefficients) {
	reduced_decomposition result;
	result.reduced = std::move(columns);
	if (track_coefficients) {
		result.coefficients.resize(result.reduced.size());
		for (std::size_t j = 0; j < result.reduced.size(); ++j)
			result.coefficients[j] =
			    sparse_column::from_entries({{static_cast<index_t>(j), 1}}, field);
	}
	for (std::size_t j = 0; j < result.reduced.size(); ++j) {
		sparse_column& column = result.reduced[j];
		while (auto pivot = column.pivot()) {
			auto owner = result.pivot_of.find(*pivot);
			if (owner == result.pivot_of.end()) {
				result.pivot_of.emplace(*pivot, j);
				break;
			}
			const sparse_column& other = result.reduced[owner->second];
			coefficient_t lambda = field.neg(
			    field.mul(column.pivot_coefficient(), field.inverse(other.pivot_coefficient())));
			column.axpy(other, lambda, field);
			if (track_coefficients)
				result.coefficients[j].axpy(result.coefficients[owner->second], lambda, field);
		}
	}
	return result;
}

void clear_columns(std::vector<sparse_column>& columns, const std::vector<std::size_t>& to_clear) {
	for (std::size_t j : to_clear) {
		if (j >= columns.size()) throw std::out_of_range("clear_columns: column index out of range");
		columns[j] = sparse_column{};
	}
}

namespace {

void check_block_grading(const std::vector<std::vector<sparse_column>>& blocks, std::size_t d,
                         std::size_t adjacent) {
	std::size_t rows = adjacent < blocks.size() ? blocks[adjacent].size() : 0;
	for (const sparse_column& column : blocks[d])
		for (const column_entry& e : column.entries())
			if (e.row < 0 || static_cast<std::size_t>(e.row) >= rows)
				throw std::invalid_argument("graded block entry outside the adjacent degree");
}

}

graded_reduction reduce_with_clearing(std::vector<std::vector<sparse_column>> blocks,
                                      grading_direction direction, const prime_field& field,
                                      bool track_coefficients) {
	graded_reduction result;
	result.blocks.resize(blocks.size());
	result.cleared.resize(blocks.size());
	if (blocks.empty()) return result;

	std::vector<std::size_t> order(blocks.size());
	for (std::size_t i = 0; i < blocks.size(); ++i)
		order[i] = direction == grading_direction::cohomological ? i : blocks.size() - 1 - i;

	for (std::size_t step = 0; step < order.size(); ++step) {
		std::size_t d = order[step];
		std::size_t adjacent = direction == grading_direction::cohomological ? d + 1 : d - 1;
		if (direction == grading_direction::homological && d == 0) adjacent = blocks.size();
		// the top cohomological block may index rows beyond the provided range;
		// the bottom homological block must not index any rows at all
		if (!(direction == grading_direction::cohomological && adjacent >= blocks.size()))
			check_block_grading(blocks, d, adjacent);
		result.blocks[d] = reduce_matrix(std::move(blocks[d]), field, track_coefficients);
		if (adjacent < blocks.size()) {
			// a pivot row of this block indexes a column of the adjacent block whose
			// own reduction is guaranteed to end at zero
			std::vector<std::size_t>& cleared = result.cleared[adjacent];
			for (const auto& [row, column] : result.blocks[d].pivot_of)
				cleared.push_back(static_cast<std::size_t>(row));
			std::sort(cleared.begin(), cleared.end());
			clear_columns(blocks[adjacent], cleared);
		}
	}
	return result;
}

}
