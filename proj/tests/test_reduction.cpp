#include <random>
#include <set>

#include "doctest.h"
#include "ripsimage/reduction.hpp"
#include "ripsimage/simplex.hpp"
#include "test_util.hpp"

using namespace ripsimage;

namespace {

std::vector<coefficient_t> to_dense(const sparse_column& c, std::size_t rows) {
	std::vector<coefficient_t> v(rows, 0);
	for (const column_entry& e : c.entries()) v[static_cast<std::size_t>(e.row)] = e.coefficient;
	return v;
}

// verifies R = D * V column by column over a dense image
void check_factorization(const std::vector<sparse_column>& d, const reduced_decomposition& dec,
                         std::size_t rows, const prime_field& field) {
	REQUIRE(dec.coefficients.size() == d.size());
	for (std::size_t j = 0; j < d.size(); ++j) {
		std::vector<coefficient_t> product(rows, 0);
		for (const column_entry& ve : dec.coefficients[j].entries()) {
			const sparse_column& source = d[static_cast<std::size_t>(ve.row)];
			for (const column_entry& de : source.entries()) {
				coefficient_t& slot = product[static_cast<std::size_t>(de.row)];
				slot = field.add(slot, field.mul(ve.coefficient, de.coefficient));
			}
		}
		CHECK(product == to_dense(dec.reduced[j], rows));
	}
}

std::vector<sparse_column> random_sparse_matrix(std::mt19937_64& rng, std::size_t rows,
                                                std::size_t cols, const prime_field& field) {
	std::vector<sparse_column> columns;
	for (std::size_t j = 0; j < cols; ++j) {
		std::vector<column_entry> entries;
		for (std::size_t i = 0; i < rows; ++i)
			if (testutil::uniform01(rng) < 0.2)
				entries.push_back(
				    {static_cast<index_t>(i),
				     static_cast<coefficient_t>(1 + rng() % (field.modulus() - 1))});
		columns.push_back(sparse_column::from_entries(std::move(entries), field));
	}
	return columns;
}

sparse_column test_boundary(index_t simplex, index_t dim, const filtration_order& facets,
                            index_t n, const prime_field& field, const binomial_table& binomial) {
	if (dim == 0) return {};
	std::vector<index_t> vertices = simplex_vertices(simplex, dim, n, binomial);
	std::vector<column_entry> entries;
	std::vector<index_t> facet(vertices.size() - 1);
	for (std::size_t omitted = 0; omitted < vertices.size(); ++omitted) {
		std::size_t w = 0;
		for (std::size_t i = 0; i < vertices.size(); ++i)
			if (i != omitted) facet[w++] = vertices[i];
		entries.push_back({static_cast<index_t>(facets.position(simplex_index(facet, binomial))),
		                   (omitted & 1) ? field.neg(1) : coefficient_t{1}});
	}
	return sparse_column::from_entries(std::move(entries), field);
}

}

TEST_CASE("a single column is already reduced") {
	prime_field f2(2);
	std::vector<sparse_column> columns{sparse_column::from_entries({{0, 1}}, f2)};
	reduced_decomposition dec = reduce_matrix(columns, f2, true);
	CHECK(dec.reduced[0] == columns[0]);
	CHECK(dec.coefficients[0].entries() == std::vector<column_entry>{{0, 1}});
	CHECK(dec.pivot_of.at(0) == 0);
}

TEST_CASE("triangle boundary matrix reduces to one zero column") {
	prime_field f2(2);
	// edges {1,0}, {2,0}, {2,1} over vertex rows
	std::vector<sparse_column> columns{sparse_column::from_entries({{0, 1}, {1, 1}}, f2),
	                                   sparse_column::from_entries({{0, 1}, {2, 1}}, f2),
	                                   sparse_column::from_entries({{1, 1}, {2, 1}}, f2)};
	reduced_decomposition dec = reduce_matrix(columns, f2, true);
	CHECK_FALSE(dec.is_zero(0));
	CHECK_FALSE(dec.is_zero(1));
	CHECK(dec.is_zero(2));
	CHECK(dec.pivot_of.at(1) == 0);
	CHECK(dec.pivot_of.at(2) == 1);
	check_factorization(columns, dec, 3, f2);
	// the kernel column records the full cycle
	CHECK(dec.coefficients[2].size() == 3);
}

TEST_CASE("reduction yields R = DV with unit upper-triangular V and distinct pivots") {
	std::mt19937_64 rng(23);
	for (int m : {2, 3, 5}) {
		prime_field field(static_cast<coefficient_t>(m));
		for (int instance = 0; instance < 10; ++instance) {
			std::vector<sparse_column> d = random_sparse_matrix(rng, 25, 30, field);
			reduced_decomposition dec = reduce_matrix(d, field, true);
			check_factorization(d, dec, 25, field);
			std::set<index_t> pivots;
			for (std::size_t j = 0; j < dec.reduced.size(); ++j) {
				const sparse_column& v = dec.coefficients[j];
				CHECK(v.pivot() == static_cast<index_t>(j));
				CHECK(v.pivot_coefficient() == 1);
				if (!dec.is_zero(j)) {
					index_t pivot = *dec.reduced[j].pivot();
					CHECK_FALSE(pivots.contains(pivot));
					pivots.insert(pivot);
					CHECK(dec.pivot_of.at(pivot) == j);
				}
			}
		}
	}
}

TEST_CASE("clear_columns zeroes targets and validates indices") {
	prime_field f2(2);
	std::vector<sparse_column> columns{sparse_column::from_entries({{0, 1}}, f2),
	                                   sparse_column::from_entries({{1, 1}}, f2)};
	clear_columns(columns, {1});
	CHECK_FALSE(columns[0].empty());
	CHECK(columns[1].empty());
	CHECK_THROWS_AS(clear_columns(columns, {2}), std::out_of_range);
}

TEST_CASE("graded reduction rejects rows outside the adjacent degree") {
	prime_field f2(2);
	std::vector<std::vector<sparse_column>> blocks(2);
	blocks[0].push_back(sparse_column::from_entries({{5, 1}}, f2));  // only 1 adjacent column
	blocks[1].push_back(sparse_column::from_entries({}, f2));
	CHECK_THROWS_AS(reduce_with_clearing(blocks, grading_direction::cohomological, f2),
	                std::invalid_argument);

	std::vector<std::vector<sparse_column>> hblocks(1);
	hblocks[0].push_back(sparse_column::from_entries({{0, 1}}, f2));  // degree 0 has no rows
	CHECK_THROWS_AS(reduce_with_clearing(hblocks, grading_direction::homological, f2),
	                std::invalid_argument);
}

TEST_CASE("cohomological clearing skips exactly the columns that reduce to zero") {
	std::mt19937_64 rng(31);
	prime_field field(3);
	distance_matrix dist = testutil::random_metric(rng, 7);
	index_t n = dist.size();
	binomial_table binomial(n, 4);

	std::vector<filtration_order> orders;
	for (index_t d = 0; d <= 3; ++d)
		orders.push_back(
		    build_order(dist, d, infinite_value, order_direction::reverse_filtration, binomial));

	std::vector<std::vector<sparse_column>> blocks(3);
	for (index_t d = 0; d <= 2; ++d)
		for (const ordered_simplex& s : orders[d].simplices())
			blocks[d].push_back(coboundary_column(s.index, d, orders[d + 1], dist, infinite_value,
			                                      field, binomial));
	std::vector<std::vector<sparse_column>> plain_blocks = blocks;

	graded_reduction cleared = reduce_with_clearing(std::move(blocks),
	                                                grading_direction::cohomological, field);
	for (index_t d = 0; d <= 2; ++d) {
		reduced_decomposition plain = reduce_matrix(plain_blocks[d], field);
		CHECK(cleared.blocks[d].pivot_of == plain.pivot_of);
		for (std::size_t j : cleared.cleared[d]) CHECK(plain.is_zero(j));
	}
	CHECK(cleared.cleared[0].empty());
	CHECK_FALSE(cleared.cleared[1].empty());
}

TEST_CASE("homological clearing skips exactly the columns that reduce to zero") {
	std::mt19937_64 rng(37);
	prime_field field(2);
	distance_matrix dist = testutil::random_metric(rng, 7);
	index_t n = dist.size();
	binomial_table binomial(n, 4);

	std::vector<filtration_order> orders;
	for (index_t d = 0; d <= 2; ++d)
		orders.push_back(
		    build_order(dist, d, infinite_value, order_direction::filtration, binomial));

	std::vector<std::vector<sparse_column>> blocks(3);
	for (index_t d = 0; d <= 2; ++d)
		for (const ordered_simplex& s : orders[d].simplices())
			blocks[d].push_back(d == 0 ? sparse_column{}
			                           : test_boundary(s.index, d, orders[d - 1], n, field,
			                                           binomial));
	std::vector<std::vector<sparse_column>> plain_blocks = blocks;

	graded_reduction cleared =
	    reduce_with_clearing(std::move(blocks), grading_direction::homological, field);
	for (index_t d = 0; d <= 2; ++d) {
		reduced_decomposition plain = reduce_matrix(plain_blocks[d], field);
		CHECK(cleared.blocks[d].pivot_of == plain.pivot_of);
		for (std::size_t j : cleared.cleared[d]) CHECK(plain.is_zero(j));
	}
	CHECK(cleared.cleared[2].empty());
	CHECK_FALSE(cleared.cleared[0].empty());
}
