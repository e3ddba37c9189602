#include "ripsimage/simplex.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ripsimage {

namespace {

// largest vertex w <= v with binomial(w, k) <= idx
index_t get_next_vertex(index_t v, index_t idx, index_t k, const binomial_table& binomial) {
	index_t lo = k - 1, hi = v;
	while (lo < hi) {
		index_t mid = lo + (hi - lo + 1) / 2;
		if (binomial(mid, k) <= idx)
			lo = mid;
		else
			hi = mid - 1;
	}
	return lo;
}

}

index_t simplex_index(std::span<const index_t> descending_vertices,
                      const binomial_table& binomial) {
	index_t dim = static_cast<index_t>(descending_vertices.size()) - 1;
	index_t index = 0;
	for (index_t i = 0; i <= dim; ++i) index += binomial(descending_vertices[i], dim + 1 - i);
	return index;
}

std::vector<index_t> simplex_vertices(index_t index, index_t dim, index_t n,
                                      const binomial_table& binomial) {
	std::vector<index_t> vertices(dim + 1);
	index_t v = n - 1;
	for (index_t k = dim + 1; k > 0; --k) {
		v = get_next_vertex(v, index, k, binomial);
		vertices[dim + 1 - k] = v;
		index -= binomial(v, k);
	}
	return vertices;
}

value_t simplex_diameter(index_t index, index_t dim, const distance_matrix& dist,
                         const binomial_table& binomial) {
	std::vector<index_t> vertices = simplex_vertices(index, dim, dist.size(), binomial);
	value_t diameter = 0;
	for (std::size_t i = 1; i < vertices.size(); ++i)
		for (std::size_t j = 0; j < i; ++j)
			diameter = std::max(diameter, dist(vertices[i], vertices[j]));
	return diameter;
}

filtration_order::filtration_order(index_t dim, std::vector<ordered_simplex> simplices)
    : dim_(dim), simplices_(std::move(simplices)) {
	position_.reserve(simplices_.size());
	for (std::size_t i = 0; i < simplices_.size(); ++i) position_.emplace(simplices_[i].index, i);
}

std::size_t filtration_order::position(index_t simplex) const {
	auto it = position_.find(simplex);
	if (it == position_.end()) throw std::out_of_range("simplex not present in the order");
	return it->second;
}

filtration_order build_order(const distance_matrix& dist, index_t dim, value_t threshold,
                             order_direction direction, const binomial_table& binomial,
                             bool parallel) {
	index_t total = binomial(dist.size(), dim + 1);
	std::vector<ordered_simplex> kept;
	if (parallel && total > 1024) {
		std::vector<std::vector<ordered_simplex>> buckets;
#ifdef _OPENMP
#pragma omp parallel
		{
#pragma omp single
			buckets.resize(omp_get_num_threads());
			std::vector<ordered_simplex>& mine = buckets[omp_get_thread_num()];
#pragma omp for schedule(static)
			for (index_t idx = 0; idx < total; ++idx) {
				value_t diameter = simplex_diameter(idx, dim, dist, binomial);
				if (diameter <= threshold) mine.push_back({idx, diameter});
			}
		}
#else
		buckets.resize(1);
		for (index_t idx = 0; idx < total; ++idx) {
			value_t diameter = simplex_diameter(idx, dim, dist, binomial);
			if (diameter <= threshold) buckets[0].push_back({idx, diameter});
		}
#endif
		// static schedule makes per-thread ranges contiguous, so concatenation
		// preserves index order and the result is independent of thread count
		for (std::vector<ordered_simplex>& bucket : buckets)
			kept.insert(kept.end(), bucket.begin(), bucket.end());
	} else {
		for (index_t idx = 0; idx < total; ++idx) {
			value_t diameter = simplex_diameter(idx, dim, dist, binomial);
			if (diameter <= threshold) kept.push_back({idx, diameter});
		}
	}
	if (direction == order_direction::filtration)
		std::sort(kept.begin(), kept.end(), filtration_less);
	else
		std::sort(kept.begin(), kept.end(), reverse_filtration_less);
	return filtration_order(dim, std::move(kept));
}

cofacet_enumerator::cofacet_enumerator(index_t simplex_index, index_t dim, index_t n,
                                       const binomial_table& binomial)
    : binomial_(binomial), vertices_(simplex_vertices(simplex_index, dim, n, binomial)), dim_(dim),
      vertex_(n - 1), k_(dim + 1), idx_below_(simplex_index), idx_above_(0) {
	skip_to_valid();
}

void cofacet_enumerator::skip_to_valid() {
	// vertices of the simplex are skipped by moving their contribution above the
	// insertion point; k_ counts the simplex vertices still below vertex_
	while (vertex_ >= 0 && binomial_(vertex_, k_) <= idx_below_) {
		idx_below_ -= binomial_(vertex_, k_);
		idx_above_ += binomial_(vertex_, k_ + 1);
		--vertex_;
		--k_;
	}
}

cofacet_enumerator::cofacet cofacet_enumerator::next() {
	cofacet result;
	result.vertex = vertex_;
	result.index = idx_above_ + binomial_(vertex_, k_ + 1) + idx_below_;
	result.negative = ((dim_ + 1 - k_) & 1) != 0;
	--vertex_;
	skip_to_valid();
	return result;
}

sparse_column coboundary_column(index_t simplex, index_t dim, const filtration_order& row_order,
                                const distance_matrix& row_metric, value_t threshold,
                                const prime_field& field, const binomial_table& binomial) {
	value_t base = simplex_diameter(simplex, dim, row_metric, binomial);
	std::vector<column_entry> entries;
	cofacet_enumerator cofacets(simplex, dim, row_metric.size(), binomial);
	while (cofacets.has_next()) {
		cofacet_enumerator::cofacet c = cofacets.next();
		value_t diameter = base;
		for (index_t v : cofacets.vertices())
			diameter = std::max(diameter, row_metric(c.vertex, v));
		if (diameter > threshold || !row_order.contains(c.index)) continue;
		entries.push_back({static_cast<index_t>(row_order.position(c.index)),
		                   c.negative ? field.neg(1) : coefficient_t{1}});
	}
	return sparse_column::from_entries(std::move(entries), field);
}

}
