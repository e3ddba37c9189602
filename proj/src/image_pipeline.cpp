#include "ripsimage/image_pipeline.hpp"

#include <optional>
#include <queue>
#include <unordered_set>

#include "ripsimage/union_find.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ripsimage {

namespace {

struct column_simplex {
	index_t index;
	value_t domain_diameter;    // diameter under the domain (larger) dissimilarity
	value_t codomain_diameter;  // diameter under the codomain dissimilarity
};

// processing order of matrix columns: reverse domain filtration
bool reverse_domain_less(const column_simplex& a, const column_simplex& b) {
	return a.domain_diameter > b.domain_diameter ||
	       (a.domain_diameter == b.domain_diameter && a.index < b.index);
}

struct heap_entry {
	value_t value;  // row simplex diameter under the row metric
	index_t index;  // row simplex combinatorial index
	coefficient_t coefficient;
};

// heap top = the column's lowest nonzero row: minimal value, then maximal index
struct row_before {
	bool operator()(const heap_entry& a, const heap_entry& b) const {
		return a.value > b.value || (a.value == b.value && a.index < b.index);
	}
};

using column_heap = std::priority_queue<heap_entry, std::vector<heap_entry>, row_before>;

std::optional<heap_entry> pop_pivot(column_heap& heap, const prime_field& field) {
	while (!heap.empty()) {
		heap_entry pivot = heap.top();
		heap.pop();
		while (!heap.empty() && heap.top().index == pivot.index) {
			pivot.coefficient = field.add(pivot.coefficient, heap.top().coefficient);
			heap.pop();
		}
		if (pivot.coefficient != 0) return pivot;
	}
	return std::nullopt;
}

struct block_outcome {
	std::vector<std::optional<heap_entry>> column_pivot;   // per column, nullopt = reduced to zero
	std::unordered_map<index_t, std::size_t> pivot_owner;  // row simplex -> owning column
	std::size_t shortcut_hits = 0;
};

// left-to-right reduction of one coboundary block over a fixed column list; rows are
// the (dim+1)-simplices of the ambient complex (domain diameter <= threshold) keyed by
// the domain metric, or by the codomain metric for the image matrix
class block_reducer {
public:
	block_reducer(const std::vector<column_simplex>& columns, index_t dim,
	              const distance_matrix& domain, const distance_matrix& codomain, bool image_rows,
	              value_t threshold, const prime_field& field, const binomial_table& binomial,
	              bool shortcut)
	    : columns_(columns), dim_(dim), domain_(domain), codomain_(codomain),
	      image_rows_(image_rows), threshold_(threshold), field_(field), binomial_(binomial),
	      shortcut_(shortcut), stored_(columns.size()), lazy_(columns.size(), 0) {
		outcome_.column_pivot.resize(columns.size());
	}

	// returns false when the column reduced to zero
	bool reduce_column(std::size_t j) {
		std::vector<heap_entry> initial;
		if (std::optional<heap_entry> claimed = generate(j, &initial)) {
			outcome_.column_pivot[j] = *claimed;
			outcome_.pivot_owner.emplace(claimed->index, j);
			return true;
		}
		column_heap working(row_before{}, std::move(initial));
		std::optional<heap_entry> pivot;
		while ((pivot = pop_pivot(working, field_))) {
			auto owner = outcome_.pivot_owner.find(pivot->index);
			if (owner == outcome_.pivot_owner.end()) break;
			std::size_t o = owner->second;
			materialize(o);
			// the stored column carries a unit pivot coefficient
			coefficient_t lambda = field_.neg(pivot->coefficient);
			working.push(*pivot);
			for (const heap_entry& e : stored_[o])
				working.push({e.value, e.index, field_.mul(lambda, e.coefficient)});
		}
		if (!pivot) return false;
		outcome_.column_pivot[j] = *pivot;
		outcome_.pivot_owner.emplace(pivot->index, j);
		std::vector<heap_entry>& store = stored_[j];
		store.push_back(*pivot);
		while (std::optional<heap_entry> rest = pop_pivot(working, field_))
			store.push_back(*rest);
		coefficient_t inv = field_.inverse(pivot->coefficient);
		for (heap_entry& e : store) e.coefficient = field_.mul(e.coefficient, inv);
		return true;
	}

	const block_outcome& outcome() const { return outcome_; }
	block_outcome take_outcome() { return std::move(outcome_); }

private:
	// initial column of j with the emergent-pair check: a cofacet matching the
	// column's own row-metric diameter is the column's pivot, because every
	// admissible cofacet lies at that diameter or above and ties arrive largest
	// index first; if it is unclaimed the column is already reduced
	std::optional<heap_entry> generate(std::size_t j, std::vector<heap_entry>* entries) {
		const column_simplex& sigma = columns_[j];
		bool shortcut_alive = shortcut_;
		value_t target = image_rows_ ? sigma.codomain_diameter : sigma.domain_diameter;
		cofacet_enumerator cofacets(sigma.index, dim_, domain_.size(), binomial_);
		const std::vector<index_t>& vertices = cofacets.vertices();
		while (cofacets.has_next()) {
			cofacet_enumerator::cofacet c = cofacets.next();
			value_t domain_diameter = sigma.domain_diameter;
			for (index_t v : vertices)
				domain_diameter = std::max(domain_diameter, domain_(c.vertex, v));
			if (domain_diameter > threshold_) continue;
			value_t row_value = domain_diameter;
			if (image_rows_) {
				row_value = sigma.codomain_diameter;
				for (index_t v : vertices)
					row_value = std::max(row_value, codomain_(c.vertex, v));
			}
			heap_entry entry{row_value, c.index,
			                 c.negative ? field_.neg(1) : coefficient_t{1}};
			if (shortcut_alive && row_value == target) {
				if (!outcome_.pivot_owner.contains(c.index)) {
					lazy_[j] = 1;
					++outcome_.shortcut_hits;
					return entry;
				}
				shortcut_alive = false;
			}
			if (entries) entries->push_back(entry);
		}
		return std::nullopt;
	}

	// a column claimed through the shortcut is its own reduction; rebuild it in
	// full the first time another column needs to subtract it
	void materialize(std::size_t o) {
		if (!lazy_[o]) return;
		lazy_[o] = 0;
		std::vector<heap_entry> entries;
		bool saved = std::exchange(shortcut_, false);
		generate(o, &entries);
		shortcut_ = saved;
		index_t pivot_index = outcome_.column_pivot[o]->index;
		coefficient_t inv = 1;
		for (const heap_entry& e : entries)
			if (e.index == pivot_index) inv = field_.inverse(e.coefficient);
		for (heap_entry& e : entries) e.coefficient = field_.mul(e.coefficient, inv);
		stored_[o] = std::move(entries);
	}

	const std::vector<column_simplex>& columns_;
	index_t dim_;
	const distance_matrix& domain_;
	const distance_matrix& codomain_;
	bool image_rows_;
	value_t threshold_;
	const prime_field& field_;
	const binomial_table& binomial_;
	bool shortcut_;
	block_outcome outcome_;
	std::vector<std::vector<heap_entry>> stored_;
	std::vector<char> lazy_;
};

class pipeline_engine {
public:
	pipeline_engine(const distance_matrix& domain, const distance_matrix& codomain,
	                bool image_mode, const pipeline_options& options)
	    : domain_(domain), codomain_(codomain), image_mode_(image_mode), options_(options),
	      field_(options.modulus),
	      binomial_(domain.size(), options.max_dim + 2) {}

	barcode run(pipeline_stats* stats) {
		barcode bars;
		if (options_.threshold < 0) return bars;
		std::vector<column_simplex> columns;
		std::unordered_set<index_t> prior_pivots;
		compute_degree0(bars, columns, prior_pivots);
		for (index_t dim = 1; dim <= options_.max_dim; ++dim) {
			degree_stats ds;
			ds.degree = dim;
			ds.columns = columns.size();
			ds.cleared = cleared_count_;

			block_reducer domain_reducer(columns, dim, domain_, codomain_, false,
			                             options_.threshold, field_, binomial_,
			                             options_.emergent_shortcut);
			std::vector<char> domain_zero(columns.size(), 0);
			for (std::size_t j = 0; j < columns.size(); ++j) {
				if (domain_reducer.reduce_column(j)) {
					if (!image_mode_) {
						const heap_entry& pivot = *domain_reducer.outcome().column_pivot[j];
						add_pair_interval(bars, dim, columns[j], pivot);
					}
					continue;
				}
				domain_zero[j] = 1;
				ds.domain_zeros.push_back(columns[j].index);
				if (options_.clearing || !prior_pivots.contains(columns[j].index))
					add_essential_interval(bars, dim, columns[j]);
			}
			ds.domain_zero_columns = ds.domain_zeros.size();
			ds.shortcut_hits_domain = domain_reducer.outcome().shortcut_hits;

			if (image_mode_) {
				block_reducer image_reducer(columns, dim, domain_, codomain_, true,
				                            options_.threshold, field_, binomial_,
				                            options_.emergent_shortcut);
				for (std::size_t j = 0; j < columns.size(); ++j) {
					if (options_.clearing && domain_zero[j]) continue;
					if (!image_reducer.reduce_column(j)) {
						if (options_.clearing)
							throw internal_error(
							    "image column reduced to zero despite clearing");
						ds.image_zeros.push_back(columns[j].index);
						continue;
					}
					const heap_entry& pivot = *image_reducer.outcome().column_pivot[j];
					add_pair_interval(bars, dim, columns[j], pivot);
				}
				ds.shortcut_hits_image = image_reducer.outcome().shortcut_hits;
			}

			if (stats) stats->degrees.push_back(std::move(ds));

			if (dim < options_.max_dim) {
				block_outcome domain_outcome = domain_reducer.take_outcome();
				prior_pivots.clear();
				for (const auto& [row, column] : domain_outcome.pivot_owner)
					prior_pivots.insert(row);
				columns = assemble_columns(dim + 1, prior_pivots);
			}
		}
		bars.sort_canonical();
		return bars;
	}

private:
	// degree-0 bars by merging components along codomain-ordered edges; the
	// domain-ordered merge gives the edges cleared from the degree-1 block
	void compute_degree0(barcode& bars, std::vector<column_simplex>& columns,
	                     std::unordered_set<index_t>& prior_pivots) {
		index_t n = domain_.size();
		std::vector<column_simplex> edges = all_simplices(1);

		std::vector<std::size_t> order(edges.size());
		for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
		std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
			const column_simplex &ea = edges[a], &eb = edges[b];
			return ea.codomain_diameter < eb.codomain_diameter ||
			       (ea.codomain_diameter == eb.codomain_diameter && ea.index > eb.index);
		});
		union_find components(n);
		for (std::size_t i : order) {
			std::vector<index_t> vertices = simplex_vertices(edges[i].index, 1, n, binomial_);
			index_t u = components.find(vertices[0]), v = components.find(vertices[1]);
			if (u == v) continue;
			index_t dying = components.link(u, v);
			interval bar{0, 0, edges[i].codomain_diameter, {}, {}};
			if (options_.witnesses) {
				bar.birth_vertices = {dying};
				bar.death_vertices = vertices;
			}
			if (bar.birth < bar.death) bars.intervals.push_back(std::move(bar));
		}
		for (index_t v = 0; v < n; ++v)
			if (components.find(v) == v) {
				interval bar{0, 0, infinite_value, {}, {}};
				if (options_.witnesses) bar.birth_vertices = {v};
				bars.intervals.push_back(std::move(bar));
			}

		if (options_.max_dim < 1) return;

		// domain-order pairing; identical matrices make this the same merge set
		std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
			const column_simplex &ea = edges[a], &eb = edges[b];
			return ea.domain_diameter < eb.domain_diameter ||
			       (ea.domain_diameter == eb.domain_diameter && ea.index > eb.index);
		});
		union_find domain_components(n);
		for (std::size_t i : order) {
			std::vector<index_t> vertices = simplex_vertices(edges[i].index, 1, n, binomial_);
			index_t u = domain_components.find(vertices[0]),
			        v = domain_components.find(vertices[1]);
			if (u == v) continue;
			domain_components.link(u, v);
			prior_pivots.insert(edges[i].index);
		}

		cleared_count_ = 0;
		columns.clear();
		for (const column_simplex& e : edges) {
			if (options_.clearing && prior_pivots.contains(e.index)) {
				++cleared_count_;
				continue;
			}
			columns.push_back(e);
		}
		std::sort(columns.begin(), columns.end(), reverse_domain_less);
	}

	std::vector<column_simplex> assemble_columns(index_t dim,
	                                             const std::unordered_set<index_t>& prior_pivots) {
		std::vector<column_simplex> all = all_simplices(dim);
		std::vector<column_simplex> columns;
		cleared_count_ = 0;
		for (const column_simplex& s : all) {
			if (options_.clearing && prior_pivots.contains(s.index)) {
				++cleared_count_;
				continue;
			}
			columns.push_back(s);
		}
		std::sort(columns.begin(), columns.end(), reverse_domain_less);
		return columns;
	}

	column_simplex make_column(index_t idx, index_t dim) const {
		std::vector<index_t> vertices = simplex_vertices(idx, dim, domain_.size(), binomial_);
		value_t l = 0, k = 0;
		for (std::size_t a = 1; a < vertices.size(); ++a)
			for (std::size_t b = 0; b < a; ++b) {
				l = std::max(l, domain_(vertices[a], vertices[b]));
				k = std::max(k, codomain_(vertices[a], vertices[b]));
			}
		return {idx, l, k};
	}

	// every dim-simplex of the ambient complex, index ascending
	std::vector<column_simplex> all_simplices(index_t dim) const {
		index_t total = binomial_(domain_.size(), dim + 1);
		std::vector<column_simplex> kept;
		if (options_.parallel && total > 1024) {
			std::vector<std::vector<column_simplex>> buckets;
#ifdef _OPENMP
#pragma omp parallel
			{
#pragma omp single
				buckets.resize(omp_get_num_threads());
				std::vector<column_simplex>& mine = buckets[omp_get_thread_num()];
#pragma omp for schedule(static)
				for (index_t idx = 0; idx < total; ++idx) {
					column_simplex s = make_column(idx, dim);
					if (s.domain_diameter <= options_.threshold) mine.push_back(s);
				}
			}
#else
			buckets.resize(1);
			for (index_t idx = 0; idx < total; ++idx) {
				column_simplex s = make_column(idx, dim);
				if (s.domain_diameter <= options_.threshold) buckets[0].push_back(s);
			}
#endif
			for (const std::vector<column_simplex>& bucket : buckets)
				kept.insert(kept.end(), bucket.begin(), bucket.end());
			// static chunks are contiguous, so the concatenation is index-sorted
		} else {
			for (index_t idx = 0; idx < total; ++idx) {
				column_simplex s = make_column(idx, dim);
				if (s.domain_diameter <= options_.threshold) kept.push_back(s);
			}
		}
		return kept;
	}

	void add_pair_interval(barcode& bars, index_t degree, const column_simplex& sigma,
	                       const heap_entry& pivot) {
		if (sigma.domain_diameter >= pivot.value) return;
		interval bar{degree, sigma.domain_diameter, pivot.value, {}, {}};
		if (options_.witnesses) {
			bar.birth_vertices = simplex_vertices(sigma.index, degree, domain_.size(), binomial_);
			bar.death_vertices =
			    simplex_vertices(pivot.index, degree + 1, domain_.size(), binomial_);
		}
		bars.intervals.push_back(std::move(bar));
	}

	void add_essential_interval(barcode& bars, index_t degree, const column_simplex& sigma) {
		interval bar{degree, sigma.domain_diameter, infinite_value, {}, {}};
		if (options_.witnesses)
			bar.birth_vertices = simplex_vertices(sigma.index, degree, domain_.size(), binomial_);
		bars.intervals.push_back(std::move(bar));
	}

	const distance_matrix& domain_;
	const distance_matrix& codomain_;
	bool image_mode_;
	pipeline_options options_;
	prime_field field_;
	binomial_table binomial_;
	std::size_t cleared_count_ = 0;
};

}

barcode compute_single_barcode(const distance_matrix& dist, const pipeline_options& options,
                               pipeline_stats* stats) {
	pipeline_engine engine(dist, dist, false, options);
	return engine.run(stats);
}

barcode compute_image_barcode(const filtration_pair& pair, const pipeline_options& options,
                              pipeline_stats* stats) {
	dominance_report report = validate_dominance(pair.domain, pair.codomain);
	if (!report.ok)
		throw std::invalid_argument("domain dissimilarity does not dominate the codomain one");
	pipeline_engine engine(pair.domain, pair.codomain, true, options);
	return engine.run(stats);
}

std::vector<interval> assemble_intervals(const reduced_decomposition& image_block,
                                         const reduced_decomposition& domain_block,
                                         const filtration_order& columns,
                                         const filtration_order& image_rows,
                                         const std::vector<bool>& domain_column_is_prior_pivot,
                                         index_t degree, index_t n, const binomial_table& binomial,
                                         bool witnesses) {
	std::vector<interval> result;
	for (std::size_t j = 0; j < columns.size(); ++j) {
		const ordered_simplex& sigma = columns.simplices()[j];
		if (j < image_block.reduced.size() && !image_block.is_zero(j)) {
			const ordered_simplex& tau =
			    image_rows.simplices()[static_cast<std::size_t>(*image_block.reduced[j].pivot())];
			if (sigma.value < tau.value) {
				interval bar{degree, sigma.value, tau.value, {}, {}};
				if (witnesses) {
					bar.birth_vertices = simplex_vertices(sigma.index, degree, n, binomial);
					bar.death_vertices = simplex_vertices(tau.index, degree + 1, n, binomial);
				}
				result.push_back(std::move(bar));
			}
		}
		if (domain_block.is_zero(j) && !domain_column_is_prior_pivot[j]) {
			interval bar{degree, sigma.value, infinite_value, {}, {}};
			if (witnesses) bar.birth_vertices = simplex_vertices(sigma.index, degree, n, binomial);
			result.push_back(std::move(bar));
		}
	}
	return result;
}

namespace {

// boundary of a simplex as a column over positions of a facet order
sparse_column boundary_column(index_t simplex, index_t dim, const filtration_order& facet_order,
                              index_t n, const prime_field& field, const binomial_table& binomial) {
	std::vector<column_entry> entries;
	if (dim == 0) return sparse_column{};
	std::vector<index_t> vertices = simplex_vertices(simplex, dim, n, binomial);
	std::vector<index_t> facet(vertices.size() - 1);
	for (std::size_t omitted = 0; omitted < vertices.size(); ++omitted) {
		std::size_t w = 0;
		for (std::size_t i = 0; i < vertices.size(); ++i)
			if (i != omitted) facet[w++] = vertices[i];
		index_t idx = simplex_index(facet, binomial);
		coefficient_t c = (omitted & 1) ? field.neg(1) : coefficient_t{1};
		entries.push_back({static_cast<index_t>(facet_order.position(idx)), c});
	}
	return sparse_column::from_entries(std::move(entries), field);
}

struct graded_orders {
	// per dimension 0..max_dim+1: the ambient simplices in domain filtration
	// order (values = domain diameters) and in codomain filtration order
	// (values = codomain diameters)
	std::vector<filtration_order> domain_order;
	std::vector<filtration_order> codomain_order;
};

graded_orders build_graded_orders(const filtration_pair& pair, index_t max_dim, value_t threshold,
                                  const binomial_table& binomial) {
	graded_orders orders;
	for (index_t dim = 0; dim <= max_dim + 1; ++dim) {
		index_t total = binomial(pair.domain.size(), dim + 1);
		std::vector<ordered_simplex> domain_side, codomain_side;
		for (index_t idx = 0; idx < total; ++idx) {
			value_t l = simplex_diameter(idx, dim, pair.domain, binomial);
			if (l > threshold) continue;
			domain_side.push_back({idx, l});
			codomain_side.push_back({idx, simplex_diameter(idx, dim, pair.codomain, binomial)});
		}
		std::sort(domain_side.begin(), domain_side.end(), filtration_less);
		std::sort(codomain_side.begin(), codomain_side.end(), filtration_less);
		orders.domain_order.emplace_back(dim, std::move(domain_side));
		orders.codomain_order.emplace_back(dim, std::move(codomain_side));
	}
	return orders;
}

}

barcode compute_image_barcode_homology(const filtration_pair& pair,
                                       const pipeline_options& options) {
	dominance_report report = validate_dominance(pair.domain, pair.codomain);
	if (!report.ok)
		throw std::invalid_argument("domain dissimilarity does not dominate the codomain one");
	index_t n = pair.domain.size();
	prime_field field(options.modulus);
	binomial_table binomial(n, options.max_dim + 2);
	graded_orders orders = build_graded_orders(pair, options.max_dim, options.threshold, binomial);

	barcode bars;
	for (index_t degree = 0; degree <= options.max_dim; ++degree) {
		const filtration_order& rows = orders.domain_order[degree];

		// domain boundary block of this degree: zero columns are the cycles
		std::vector<sparse_column> domain_columns;
		for (const ordered_simplex& s : rows.simplices())
			domain_columns.push_back(
			    degree == 0 ? sparse_column{}
			                : boundary_column(s.index, degree, orders.domain_order[degree - 1], n,
			                                  field, binomial));
		reduced_decomposition domain_block = reduce_matrix(std::move(domain_columns), field);

		// mixed block: boundaries of the (degree+1)-simplices traversed in
		// codomain order, expressed over domain-order row positions
		const filtration_order& mixed_columns = orders.codomain_order[degree + 1];
		std::vector<sparse_column> mixed;
		for (const ordered_simplex& s : mixed_columns.simplices())
			mixed.push_back(boundary_column(s.index, degree + 1, rows, n, field, binomial));
		reduced_decomposition mixed_block = reduce_matrix(std::move(mixed), field);

		for (std::size_t j = 0; j < mixed_block.reduced.size(); ++j) {
			if (mixed_block.is_zero(j)) continue;
			std::size_t pivot = static_cast<std::size_t>(*mixed_block.reduced[j].pivot());
			const ordered_simplex& sigma = rows.simplices()[pivot];
			const ordered_simplex& tau = mixed_columns.simplices()[j];
			if (sigma.value >= tau.value) continue;
			interval bar{degree, sigma.value, tau.value, {}, {}};
			if (options.witnesses) {
				bar.birth_vertices = simplex_vertices(sigma.index, degree, n, binomial);
				bar.death_vertices = simplex_vertices(tau.index, degree + 1, n, binomial);
			}
			bars.intervals.push_back(std::move(bar));
		}

		for (std::size_t i = 0; i < domain_block.reduced.size(); ++i) {
			if (!domain_block.is_zero(i)) continue;
			if (mixed_block.pivot_of.contains(static_cast<index_t>(i))) continue;
			const ordered_simplex& sigma = rows.simplices()[i];
			interval bar{degree, sigma.value, infinite_value, {}, {}};
			if (options.witnesses)
				bar.birth_vertices = simplex_vertices(sigma.index, degree, n, binomial);
			bars.intervals.push_back(std::move(bar));
		}
	}
	bars.sort_canonical();
	return bars;
}

}
