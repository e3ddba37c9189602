#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "ripsimage/image_pipeline.hpp"
#include "ripsimage/oracle.hpp"
#include "ripsimage/report.hpp"
#include "test_util.hpp"

using namespace ripsimage;
using testutil::random_dominated_pair;
using testutil::random_metric;
using testutil::square_on_circle;

namespace {

barcode sorted(std::vector<interval> intervals) {
	barcode bars{std::move(intervals)};
	bars.sort_canonical();
	return bars;
}

value_t diameter_of(const std::vector<index_t>& vertices, const distance_matrix& dist) {
	value_t d = 0;
	for (std::size_t a = 1; a < vertices.size(); ++a)
		for (std::size_t b = 0; b < a; ++b) d = std::max(d, dist(vertices[a], vertices[b]));
	return d;
}

// image barcode assembled from explicitly reduced coboundary blocks, no clearing
barcode explicit_image_barcode(const filtration_pair& pair, index_t max_dim,
                               const prime_field& field) {
	index_t n = pair.domain.size();
	binomial_table binomial(n, max_dim + 2);
	std::vector<filtration_order> domain_reverse, codomain_reverse;
	for (index_t d = 0; d <= max_dim + 1; ++d) {
		domain_reverse.push_back(build_order(pair.domain, d, infinite_value,
		                                     order_direction::reverse_filtration, binomial));
		codomain_reverse.push_back(build_order(pair.codomain, d, infinite_value,
		                                       order_direction::reverse_filtration, binomial));
	}
	barcode bars;
	std::vector<bool> prior(domain_reverse[0].size(), false);
	for (index_t d = 0; d <= max_dim; ++d) {
		const filtration_order& columns = domain_reverse[d];
		std::vector<sparse_column> domain_block, image_block;
		for (const ordered_simplex& s : columns.simplices()) {
			domain_block.push_back(coboundary_column(s.index, d, domain_reverse[d + 1],
			                                         pair.domain, infinite_value, field,
			                                         binomial));
			image_block.push_back(coboundary_column(s.index, d, codomain_reverse[d + 1],
			                                        pair.codomain, infinite_value, field,
			                                        binomial));
		}
		reduced_decomposition domain_dec = reduce_matrix(std::move(domain_block), field);
		reduced_decomposition image_dec = reduce_matrix(std::move(image_block), field);
		std::vector<interval> intervals =
		    assemble_intervals(image_dec, domain_dec, columns, codomain_reverse[d + 1], prior, d,
		                       n, binomial, false);
		bars.intervals.insert(bars.intervals.end(), intervals.begin(), intervals.end());

		prior.assign(domain_reverse[d + 1].size(), false);
		for (const auto& [row, column] : domain_dec.pivot_of)
			prior[static_cast<std::size_t>(row)] = true;
	}
	bars.sort_canonical();
	return bars;
}

}

TEST_CASE("single filtration barcodes of tiny instances") {
	pipeline_options options;
	options.max_dim = 2;
	options.witnesses = false;

	distance_matrix point(1);
	CHECK(barcode::same_intervals(compute_single_barcode(point, options),
	                              sorted({{0, 0.0, infinite_value, {}, {}}})));

	distance_matrix two(2);
	two.set(1, 0, 1.0);
	CHECK(barcode::same_intervals(
	    compute_single_barcode(two, options),
	    sorted({{0, 0.0, infinite_value, {}, {}}, {0, 0.0, 1.0, {}, {}}})));

	distance_matrix triangle(3);
	triangle.set(1, 0, 1.0);
	triangle.set(2, 0, 1.0);
	triangle.set(2, 1, 1.0);
	// the triangle fills the moment its last edge arrives: no degree-1 interval
	CHECK(barcode::same_intervals(compute_single_barcode(triangle, options),
	                              sorted({{0, 0.0, infinite_value, {}, {}},
	                                      {0, 0.0, 1.0, {}, {}},
	                                      {0, 0.0, 1.0, {}, {}}})));

	filtration_pair square = square_on_circle();
	const double diag = std::sqrt(2.0);
	CHECK(barcode::same_intervals(compute_single_barcode(square.codomain, options),
	                              sorted({{0, 0.0, infinite_value, {}, {}},
	                                      {0, 0.0, diag, {}, {}},
	                                      {0, 0.0, diag, {}, {}},
	                                      {0, 0.0, diag, {}, {}},
	                                      {1, diag, 2.0, {}, {}}})));
}

TEST_CASE("image barcode of two points matches the frozen values") {
	distance_matrix domain(2), codomain(2);
	domain.set(1, 0, 2.0);
	codomain.set(1, 0, 1.0);
	pipeline_options options;
	options.max_dim = 1;
	barcode bars = compute_image_barcode({domain, codomain}, options);
	CHECK(barcode::same_intervals(
	    bars, sorted({{0, 0.0, infinite_value, {}, {}}, {0, 0.0, 1.0, {}, {}}})));
}

TEST_CASE("image barcode of the square on the circle matches the frozen values") {
	const double pi = std::acos(-1.0);
	const double diag = std::sqrt(2.0);
	pipeline_options options;
	options.max_dim = 2;
	options.witnesses = true;
	filtration_pair pair = square_on_circle();
	barcode bars = compute_image_barcode(pair, options);
	CHECK(barcode::same_intervals(bars, sorted({{0, 0.0, infinite_value, {}, {}},
	                                            {0, 0.0, diag, {}, {}},
	                                            {0, 0.0, diag, {}, {}},
	                                            {0, 0.0, diag, {}, {}},
	                                            {1, pi / 2, 2.0, {}, {}}})));
	for (const interval& bar : bars.intervals) {
		if (bar.degree != 1) continue;
		REQUIRE(bar.birth_vertices.size() == 2);
		REQUIRE(bar.death_vertices.size() == 3);
		CHECK(diameter_of(bar.birth_vertices, pair.domain) == bar.birth);
		CHECK(diameter_of(bar.death_vertices, pair.codomain) == bar.death);
	}
}

TEST_CASE("identical inputs reduce the image to the plain barcode") {
	std::mt19937_64 rng(61);
	pipeline_options options;
	options.max_dim = 2;
	options.modulus = 3;
	options.witnesses = false;
	for (int instance = 0; instance < 5; ++instance) {
		distance_matrix d = random_metric(rng, 8);
		barcode image = compute_image_barcode({d, d}, options);
		barcode single = compute_single_barcode(d, options);
		CHECK(barcode::same_intervals(image, single));
	}
}

TEST_CASE("matrix reduction agrees with the brute-force rank computation") {
	std::mt19937_64 rng(67);
	pipeline_options options;
	options.max_dim = 2;
	options.witnesses = false;
	for (int m : {2, 3, 5}) {
		options.modulus = static_cast<coefficient_t>(m);
		for (index_t n : {5, 6}) {
			filtration_pair pair = random_dominated_pair(rng, n);
			barcode bars = compute_image_barcode(pair, options);
			barcode reference = image_barcode_oracle(pair, options.max_dim, options.modulus);
			CHECK(barcode::same_intervals(bars, reference));
		}
	}
}

TEST_CASE("truncated complexes agree with the truncated rank computation") {
	std::mt19937_64 rng(71);
	pipeline_options options;
	options.max_dim = 2;
	options.witnesses = false;
	for (int instance = 0; instance < 4; ++instance) {
		filtration_pair pair = random_dominated_pair(rng, 6);
		options.threshold = 0.6 + 0.2 * instance;
		barcode bars = compute_image_barcode(pair, options);
		barcode reference =
		    image_barcode_oracle(pair, options.max_dim, options.modulus, options.threshold);
		CHECK(barcode::same_intervals(bars, reference));

		pipeline_options plain = options;
		plain.clearing = false;
		CHECK(barcode::same_intervals(compute_image_barcode(pair, plain), bars));
	}
	options.threshold = 0;
	filtration_pair pair = random_dominated_pair(rng, 5);
	barcode crushed = compute_image_barcode(pair, options);
	CHECK(crushed.intervals.size() == 5);  // five everlasting components, nothing else
}

TEST_CASE("clearing and the emergent shortcut never change the result") {
	std::mt19937_64 rng(73);
	pipeline_options base;
	base.max_dim = 2;
	base.witnesses = false;
	for (int instance = 0; instance < 3; ++instance) {
		filtration_pair pair = random_dominated_pair(rng, 10);
		barcode reference = compute_image_barcode(pair, base);
		for (bool clearing : {false, true})
			for (bool shortcut : {false, true}) {
				pipeline_options options = base;
				options.clearing = clearing;
				options.emergent_shortcut = shortcut;
				CHECK(barcode::same_intervals(compute_image_barcode(pair, options), reference));
			}
	}
}

TEST_CASE("boundary-matrix path and coboundary path agree") {
	std::mt19937_64 rng(79);
	pipeline_options options;
	options.max_dim = 2;
	options.witnesses = false;
	for (int m : {2, 3, 5}) {
		options.modulus = static_cast<coefficient_t>(m);
		filtration_pair pair = random_dominated_pair(rng, 7);
		CHECK(barcode::same_intervals(compute_image_barcode(pair, options),
		                              compute_image_barcode_homology(pair, options)));
	}
}

TEST_CASE("explicitly reduced blocks assemble to the streamed barcode") {
	std::mt19937_64 rng(83);
	for (int m : {2, 5}) {
		prime_field field(static_cast<coefficient_t>(m));
		pipeline_options options;
		options.max_dim = 2;
		options.modulus = static_cast<coefficient_t>(m);
		options.witnesses = false;
		filtration_pair pair = random_dominated_pair(rng, 7);
		CHECK(barcode::same_intervals(explicit_image_barcode(pair, 2, field),
		                              compute_image_barcode(pair, options)));
	}
}

TEST_CASE("degree-0 image intervals equal the codomain merge history") {
	std::mt19937_64 rng(89);
	pipeline_options options;
	options.max_dim = 0;
	options.witnesses = false;
	for (int instance = 0; instance < 5; ++instance) {
		filtration_pair pair = random_dominated_pair(rng, 12);
		barcode image = compute_image_barcode(pair, options);
		barcode single = compute_single_barcode(pair.codomain, options);
		CHECK(barcode::same_intervals(image, single));
	}
}

TEST_CASE("essential intervals equal the domain essentials degree by degree") {
	std::mt19937_64 rng(97);
	pipeline_options options;
	options.max_dim = 2;
	options.witnesses = false;
	for (int instance = 0; instance < 3; ++instance) {
		filtration_pair pair = random_dominated_pair(rng, 9);
		barcode image = compute_image_barcode(pair, options);
		barcode domain_bars = compute_single_barcode(pair.domain, options);
		for (index_t d = 0; d <= 2; ++d) {
			std::vector<value_t> image_births, domain_births;
			for (const interval& bar : image.in_degree(d))
				if (bar.essential()) image_births.push_back(bar.birth);
			for (const interval& bar : domain_bars.in_degree(d))
				if (bar.essential()) domain_births.push_back(bar.birth);
			CHECK(image_births == domain_births);
		}
	}
}

TEST_CASE("without clearing both passes zero out the same columns") {
	std::mt19937_64 rng(101);
	pipeline_options options;
	options.max_dim = 2;
	options.clearing = false;
	options.witnesses = false;
	filtration_pair pair = random_dominated_pair(rng, 9);
	pipeline_stats stats;
	compute_image_barcode(pair, options, &stats);
	REQUIRE(stats.degrees.size() == 2);
	for (const degree_stats& ds : stats.degrees) {
		std::vector<index_t> domain_zeros = ds.domain_zeros, image_zeros = ds.image_zeros;
		std::sort(domain_zeros.begin(), domain_zeros.end());
		std::sort(image_zeros.begin(), image_zeros.end());
		CHECK(domain_zeros == image_zeros);
		CHECK(ds.cleared == 0);
	}
}

TEST_CASE("clearing removes the paired columns and the shortcut fires") {
	std::mt19937_64 rng(103);
	pipeline_options options;
	options.max_dim = 2;
	options.witnesses = false;
	filtration_pair pair = random_dominated_pair(rng, 12);
	pipeline_stats stats;
	compute_image_barcode(pair, options, &stats);
	REQUIRE(stats.degrees.size() == 2);
	CHECK(stats.degrees[0].cleared == 11);  // spanning-tree edges of 12 points
	CHECK(stats.degrees[1].cleared > 0);
	std::size_t hits = 0;
	for (const degree_stats& ds : stats.degrees)
		hits += ds.shortcut_hits_domain + ds.shortcut_hits_image;
	CHECK(hits > 0);
}

TEST_CASE("witness simplices realize the endpoints of their intervals") {
	std::mt19937_64 rng(107);
	pipeline_options options;
	options.max_dim = 2;
	options.witnesses = true;
	filtration_pair pair = random_dominated_pair(rng, 8);
	barcode bars = compute_image_barcode(pair, options);
	for (const interval& bar : bars.intervals) {
		REQUIRE(bar.birth_vertices.size() == static_cast<std::size_t>(bar.degree) + 1);
		CHECK(diameter_of(bar.birth_vertices, pair.domain) == bar.birth);
		if (bar.essential()) {
			CHECK(bar.death_vertices.empty());
		} else {
			REQUIRE(bar.death_vertices.size() == static_cast<std::size_t>(bar.degree) + 2);
			CHECK(diameter_of(bar.death_vertices, pair.codomain) == bar.death);
		}
	}
}

TEST_CASE("threaded pipeline output matches the serial one") {
	std::mt19937_64 rng(109);
	pipeline_options options;
	options.max_dim = 2;
	options.witnesses = true;
	filtration_pair pair = random_dominated_pair(rng, 14);
	options.parallel = true;
	barcode threaded = compute_image_barcode(pair, options);
	options.parallel = false;
	barcode serial = compute_image_barcode(pair, options);
	REQUIRE(threaded.intervals.size() == serial.intervals.size());
	for (std::size_t i = 0; i < threaded.intervals.size(); ++i)
		CHECK(threaded.intervals[i] == serial.intervals[i]);
}

TEST_CASE("dominance violations are rejected") {
	distance_matrix domain(3), codomain(3);
	domain.set(1, 0, 0.5);
	codomain.set(1, 0, 1.0);
	pipeline_options options;
	CHECK_THROWS_AS(compute_image_barcode({domain, codomain}, options), std::invalid_argument);
	CHECK_THROWS_AS(compute_image_barcode_homology({domain, codomain}, options),
	                std::invalid_argument);
}

TEST_CASE("interval assembly rules on explicit decompositions") {
	prime_field f2(2);
	binomial_table binomial(4, 3);
	filtration_order columns(1, {{0, 1.0}, {1, 2.0}});
	filtration_order image_rows(2, {{0, 1.5}});

	reduced_decomposition image_dec;
	image_dec.reduced = {sparse_column::from_entries({{0, 1}}, f2), sparse_column{}};
	reduced_decomposition domain_dec;
	domain_dec.reduced = {sparse_column::from_entries({{0, 1}}, f2), sparse_column{}};

	std::vector<interval> intervals = assemble_intervals(
	    image_dec, domain_dec, columns, image_rows, {false, false}, 1, 4, binomial, false);
	barcode expected =
	    sorted({{1, 1.0, 1.5, {}, {}}, {1, 2.0, infinite_value, {}, {}}});
	CHECK(barcode::same_intervals(barcode{intervals}, expected));

	// a pivot at the column's own scale yields an empty interval: dropped
	filtration_order tied_columns(1, {{0, 1.5}, {1, 2.0}});
	intervals = assemble_intervals(image_dec, domain_dec, tied_columns, image_rows,
	                               {false, false}, 1, 4, binomial, false);
	CHECK(barcode::same_intervals(barcode{intervals},
	                              sorted({{1, 2.0, infinite_value, {}, {}}})));

	// a prior pivot column is not essential
	intervals = assemble_intervals(image_dec, domain_dec, columns, image_rows, {false, true}, 1,
	                               4, binomial, false);
	CHECK(barcode::same_intervals(barcode{intervals}, sorted({{1, 1.0, 1.5, {}, {}}})));
}
