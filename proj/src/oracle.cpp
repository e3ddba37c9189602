#include "ripsimage/oracle.hpp"

#include <algorithm>
#include <optional>
#include <unordered_map>
#include <utility>

#include "ripsimage/simplex.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ripsimage {

namespace {

using dense_column = std::vector<coefficient_t>;

std::optional<std::size_t> last_nonzero(const dense_column& v) {
	for (std::size_t i = v.size(); i-- > 0;)
		if (v[i] != 0) return i;
	return std::nullopt;
}

// z += lambda * x on the first x.size() coordinates
void dense_axpy(dense_column& z, const dense_column& x, coefficient_t lambda,
                const prime_field& field) {
	for (std::size_t i = 0; i < x.size(); ++i)
		z[i] = field.add(z[i], field.mul(lambda, x[i]));
}

// column echelon keyed by the last nonzero row, unit pivot coefficients
struct dense_echelon {
	std::unordered_map<std::size_t, dense_column> by_pivot;

	// true when v was independent of the span (and got inserted)
	bool insert(dense_column v, const prime_field& field) {
		std::optional<std::size_t> pivot;
		while ((pivot = last_nonzero(v))) {
			auto it = by_pivot.find(*pivot);
			if (it == by_pivot.end()) break;
			dense_axpy(v, it->second, field.neg(v[*pivot]), field);
		}
		if (!pivot) return false;
		coefficient_t inv = field.inverse(v[*pivot]);
		for (std::size_t i = 0; i <= *pivot; ++i) v[i] = field.mul(v[i], inv);
		v.resize(*pivot + 1);
		by_pivot.emplace(*pivot, std::move(v));
		return true;
	}

	std::size_t rank() const { return by_pivot.size(); }
};

struct universe_simplex {
	index_t index;
	value_t domain_value;
	value_t codomain_value;
};

// all simplices of dimension <= max_dim + 1 with domain diameter <= threshold,
// per dimension sorted by (domain value, index) so prefixes are sublevel sets
struct universe {
	index_t n = 0;
	std::vector<std::vector<universe_simplex>> by_dim;
	std::vector<std::unordered_map<index_t, std::size_t>> position;
};

universe build_universe(const filtration_pair& pair, index_t max_dim, value_t threshold,
                        const binomial_table& binomial, index_t size_limit) {
	universe u;
	u.n = pair.domain.size();
	index_t count = 0;
	for (index_t dim = 0; dim <= max_dim + 1; ++dim) {
		std::vector<universe_simplex> simplices;
		index_t total = binomial(u.n, dim + 1);
		for (index_t idx = 0; idx < total; ++idx) {
			value_t l = simplex_diameter(idx, dim, pair.domain, binomial);
			if (l > threshold) continue;
			if (++count > size_limit)
				throw oracle_size_error("oracle limit of " + std::to_string(size_limit) +
				                        " simplices exceeded");
			simplices.push_back({idx, l, simplex_diameter(idx, dim, pair.codomain, binomial)});
		}
		std::sort(simplices.begin(), simplices.end(),
		          [](const universe_simplex& a, const universe_simplex& b) {
			          return a.domain_value < b.domain_value ||
			                 (a.domain_value == b.domain_value && a.index < b.index);
		          });
		std::unordered_map<index_t, std::size_t> position;
		for (std::size_t i = 0; i < simplices.size(); ++i) position.emplace(simplices[i].index, i);
		u.by_dim.push_back(std::move(simplices));
		u.position.push_back(std::move(position));
	}
	return u;
}

// dense boundary of a dim-simplex over the positions of the (dim-1)-simplices
dense_column dense_boundary(const universe& u, index_t simplex, index_t dim,
                            const prime_field& field, const binomial_table& binomial) {
	dense_column column(u.by_dim[dim - 1].size(), 0);
	std::vector<index_t> vertices = simplex_vertices(simplex, dim, u.n, binomial);
	std::vector<index_t> facet(vertices.size() - 1);
	for (std::size_t omitted = 0; omitted < vertices.size(); ++omitted) {
		std::size_t w = 0;
		for (std::size_t i = 0; i < vertices.size(); ++i)
			if (i != omitted) facet[w++] = vertices[i];
		std::size_t row = u.position[dim - 1].at(simplex_index(facet, binomial));
		column[row] = field.add(column[row], (omitted & 1) ? field.neg(1) : coefficient_t{1});
	}
	return column;
}

struct degree_data {
	// kernel of the degree-boundary, elimination left to right over the
	// (domain value, index)-sorted columns: vector j is supported on columns <= j,
	// so prefixes of the column list have prefixes of this list as kernel bases
	std::vector<std::pair<std::size_t, dense_column>> kernel;
	std::vector<value_t> column_domain_values;  // ascending, per degree-simplex
	// boundaries of the (degree+1)-simplices with their codomain values,
	// sorted by (codomain value, index)
	std::vector<std::pair<value_t, dense_column>> filled_by;
};

degree_data build_degree_data(const universe& u, index_t degree, const prime_field& field,
                              const binomial_table& binomial) {
	degree_data data;
	const std::vector<universe_simplex>& simplices = u.by_dim[degree];
	std::size_t m = simplices.size();

	std::vector<dense_column> columns(m);
	for (std::size_t j = 0; j < m; ++j) {
		data.column_domain_values.push_back(simplices[j].domain_value);
		columns[j] = degree == 0 ? dense_column{}
		                         : dense_boundary(u, simplices[j].index, degree, field, binomial);
	}
	std::vector<dense_column> v(m);
	for (std::size_t j = 0; j < m; ++j) {
		v[j].assign(m, 0);
		v[j][j] = 1;
	}
	std::unordered_map<std::size_t, std::size_t> owner;
	for (std::size_t j = 0; j < m; ++j) {
		std::optional<std::size_t> pivot;
		while ((pivot = last_nonzero(columns[j]))) {
			auto it = owner.find(*pivot);
			if (it == owner.end()) {
				owner.emplace(*pivot, j);
				break;
			}
			std::size_t o = it->second;
			coefficient_t lambda =
			    field.neg(field.mul(columns[j][*pivot], field.inverse(columns[o][*pivot])));
			dense_axpy(columns[j], columns[o], lambda, field);
			dense_axpy(v[j], v[o], lambda, field);
		}
		if (!pivot) data.kernel.emplace_back(j, std::move(v[j]));
	}

	std::vector<std::size_t> cofills(u.by_dim[degree + 1].size());
	for (std::size_t i = 0; i < cofills.size(); ++i) cofills[i] = i;
	std::sort(cofills.begin(), cofills.end(), [&](std::size_t a, std::size_t b) {
		const universe_simplex &sa = u.by_dim[degree + 1][a], &sb = u.by_dim[degree + 1][b];
		return sa.codomain_value < sb.codomain_value ||
		       (sa.codomain_value == sb.codomain_value && sa.index < sb.index);
	});
	for (std::size_t i : cofills) {
		const universe_simplex& tau = u.by_dim[degree + 1][i];
		data.filled_by.emplace_back(tau.codomain_value,
		                            dense_boundary(u, tau.index, degree + 1, field, binomial));
	}
	return data;
}

std::vector<value_t> grid_scales(const universe& u) {
	std::vector<value_t> scales;
	for (const std::vector<universe_simplex>& simplices : u.by_dim)
		for (const universe_simplex& s : simplices) {
			scales.push_back(s.domain_value);
			scales.push_back(s.codomain_value);
		}
	std::sort(scales.begin(), scales.end());
	scales.erase(std::unique(scales.begin(), scales.end()), scales.end());
	scales.push_back(scales.empty() ? value_t{1} : scales.back() + 1);
	return scales;
}

// ranks of cycles-up-to-boundaries over one grid column: survivors_at[a] =
// rank [Z_{s_a} | B] - rank B for the echelonized boundary span B
std::vector<index_t> rank_column(const degree_data& data, const dense_echelon& base,
                                 const std::vector<value_t>& scales, const prime_field& field) {
	dense_echelon echelon = base;
	std::vector<index_t> survivors_at(scales.size(), 0);
	std::size_t ki = 0;
	index_t survivors = 0;
	for (std::size_t a = 0; a < scales.size(); ++a) {
		std::size_t m_a = static_cast<std::size_t>(
		    std::upper_bound(data.column_domain_values.begin(), data.column_domain_values.end(),
		                     scales[a]) -
		    data.column_domain_values.begin());
		while (ki < data.kernel.size() && data.kernel[ki].first < m_a) {
			if (echelon.insert(data.kernel[ki].second, field)) ++survivors;
			++ki;
		}
		survivors_at[a] = survivors;
	}
	return survivors_at;
}

rank_grid grid_from_data(const degree_data& data, index_t degree,
                         const std::vector<value_t>& scales, const prime_field& field,
                         bool parallel) {
	rank_grid grid;
	grid.degree = degree;
	grid.scales = scales;
	std::size_t S = scales.size();
	grid.rank.resize(S);
	for (std::size_t a = 0; a < S; ++a) grid.rank[a].resize(S - a, 0);

	auto fill_column = [&](std::size_t b, const dense_echelon& base) {
		std::vector<index_t> survivors_at = rank_column(data, base, scales, field);
		for (std::size_t a = 0; a <= b; ++a) grid.rank[a][b - a] = survivors_at[a];
	};

	if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
		for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(S); ++b) {
			dense_echelon base;
			for (const std::pair<value_t, dense_column>& fill : data.filled_by) {
				if (fill.first > scales[b]) break;
				base.insert(fill.second, field);
			}
			fill_column(static_cast<std::size_t>(b), base);
		}
		return grid;
#endif
	}
	dense_echelon base;
	std::size_t fi = 0;
	for (std::size_t b = 0; b < S; ++b) {
		while (fi < data.filled_by.size() && data.filled_by[fi].first <= scales[b]) {
			base.insert(data.filled_by[fi].second, field);
			++fi;
		}
		fill_column(b, base);
	}
	return grid;
}

}

index_t oracle_universe_size(index_t n, index_t max_dim, value_t threshold,
                             const distance_matrix& domain) {
	binomial_table binomial(n, max_dim + 2);
	index_t count = 0;
	for (index_t dim = 0; dim <= max_dim + 1; ++dim) {
		index_t total = binomial(n, dim + 1);
		for (index_t idx = 0; idx < total; ++idx) {
			if (simplex_diameter(idx, dim, domain, binomial) <= threshold) ++count;
			if (count > oracle_size_limit) return count;
		}
	}
	return count;
}

index_t induced_rank(const filtration_pair& pair, index_t degree, value_t s, value_t t,
                     const prime_field& field, value_t threshold) {
	if (s > t) throw std::invalid_argument("induced_rank requires s <= t");
	dominance_report report = validate_dominance(pair.domain, pair.codomain);
	if (!report.ok)
		throw std::invalid_argument("domain dissimilarity does not dominate the codomain one");
	binomial_table binomial(pair.domain.size(), degree + 2);
	universe u = build_universe(pair, degree, threshold, binomial, oracle_size_limit);
	degree_data data = build_degree_data(u, degree, field, binomial);

	dense_echelon echelon;
	for (const std::pair<value_t, dense_column>& fill : data.filled_by) {
		if (fill.first > t) break;
		echelon.insert(fill.second, field);
	}
	std::size_t m_s = static_cast<std::size_t>(
	    std::upper_bound(data.column_domain_values.begin(), data.column_domain_values.end(), s) -
	    data.column_domain_values.begin());
	index_t survivors = 0;
	for (const std::pair<std::size_t, dense_column>& kv : data.kernel) {
		if (kv.first >= m_s) break;
		if (echelon.insert(kv.second, field)) ++survivors;
	}
	return survivors;
}

rank_grid build_rank_grid(const filtration_pair& pair, index_t degree, const prime_field& field,
                          value_t threshold, bool parallel) {
	dominance_report report = validate_dominance(pair.domain, pair.codomain);
	if (!report.ok)
		throw std::invalid_argument("domain dissimilarity does not dominate the codomain one");
	binomial_table binomial(pair.domain.size(), degree + 2);
	universe u = build_universe(pair, degree, threshold, binomial, oracle_size_limit);
	degree_data data = build_degree_data(u, degree, field, binomial);
	return grid_from_data(data, degree, grid_scales(u), field, parallel);
}

std::vector<interval> barcode_from_ranks(const rank_grid& grid) {
	std::size_t S = grid.scales.size();
	auto r = [&](std::ptrdiff_t a, std::ptrdiff_t b) -> index_t {
		if (a < 0) return 0;
		if (b < a || b >= static_cast<std::ptrdiff_t>(S))
			throw internal_error("rank grid queried outside its domain");
		return grid.rank[a][b - a];
	};
	std::vector<interval> intervals;
	for (std::ptrdiff_t a = 0; a < static_cast<std::ptrdiff_t>(S); ++a) {
		for (std::ptrdiff_t b = a + 1; b < static_cast<std::ptrdiff_t>(S); ++b) {
			index_t mult = r(a, b - 1) - r(a, b) - r(a - 1, b - 1) + r(a - 1, b);
			if (mult < 0) throw internal_error("negative interval multiplicity in rank grid");
			if (mult > 0 && b + 1 == static_cast<std::ptrdiff_t>(S))
				throw internal_error("interval dying at the sentinel scale");
			for (index_t c = 0; c < mult; ++c)
				intervals.push_back(
				    {grid.degree, grid.scales[a], grid.scales[b], {}, {}});
		}
		index_t essential = r(a, S - 1) - r(a - 1, S - 1);
		if (essential < 0) throw internal_error("negative interval multiplicity in rank grid");
		if (essential > 0 && a + 1 == static_cast<std::ptrdiff_t>(S))
			throw internal_error("interval born at the sentinel scale");
		for (index_t c = 0; c < essential; ++c)
			intervals.push_back({grid.degree, grid.scales[a], infinite_value, {}, {}});
	}
	return intervals;
}

barcode image_barcode_oracle(const filtration_pair& pair, index_t max_dim, coefficient_t modulus,
                             value_t threshold, bool parallel) {
	prime_field field(modulus);
	barcode bars;
	for (index_t degree = 0; degree <= max_dim; ++degree) {
		rank_grid grid = build_rank_grid(pair, degree, field, threshold, parallel);
		std::vector<interval> intervals = barcode_from_ranks(grid);
		bars.intervals.insert(bars.intervals.end(), intervals.begin(), intervals.end());
	}
	bars.sort_canonical();
	return bars;
}

}
