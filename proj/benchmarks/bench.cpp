// compares the threaded kernels against their serial reference paths and the
// image run against a single-filtration run on the same point sample
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "ripsimage/image_pipeline.hpp"
#include "ripsimage/oracle.hpp"
#include "ripsimage/simplex.hpp"

using namespace ripsimage;

namespace {

using clock_type = std::chrono::steady_clock;

template <typename F>
double seconds(F&& work) {
	auto start = clock_type::now();
	work();
	return std::chrono::duration<double>(clock_type::now() - start).count();
}

// evenly spread sample of the unit sphere; geodesic dominates the chord
filtration_pair sphere_pair(index_t n) {
	const double pi = std::acos(-1.0);
	std::vector<std::array<double, 3>> points(n);
	const double golden_angle = pi * (3.0 - std::sqrt(5.0));
	for (index_t i = 0; i < n; ++i) {
		double z = 1.0 - 2.0 * (i + 0.5) / n;
		double radius = std::sqrt(std::max(0.0, 1.0 - z * z));
		double azimuth = golden_angle * i;
		points[i] = {radius * std::cos(azimuth), radius * std::sin(azimuth), z};
	}
	distance_matrix geodesic(n), chord(n);
	for (index_t i = 1; i < n; ++i)
		for (index_t j = 0; j < i; ++j) {
			double dot = 0, squared = 0;
			for (int c = 0; c < 3; ++c) {
				dot += points[i][c] * points[j][c];
				double diff = points[i][c] - points[j][c];
				squared += diff * diff;
			}
			double straight = std::sqrt(squared);
			double arc = std::acos(std::clamp(dot, -1.0, 1.0));
			chord.set(i, j, straight);
			geodesic.set(i, j, std::max(arc, straight));
		}
	return {std::move(geodesic), std::move(chord)};
}

void print_row(const char* label, double serial_secs, double threaded_secs) {
	std::printf("%-34s serial %8.3f s   threaded %8.3f s   speedup %5.2fx\n", label,
	            serial_secs, threaded_secs, serial_secs / threaded_secs);
}

}

int main(int argc, char** argv) {
	index_t n = argc > 1 ? std::atol(argv[1]) : 96;
	index_t dim = argc > 2 ? std::atol(argv[2]) : 2;
	std::printf("benchmark: %lld sphere points, degrees 0-%lld\n", static_cast<long long>(n),
	            static_cast<long long>(dim));

	filtration_pair pair = sphere_pair(n);
	binomial_table binomial(n, dim + 3);

	double order_serial = seconds([&] {
		build_order(pair.domain, dim + 1, infinite_value, order_direction::reverse_filtration,
		            binomial, false);
	});
	double order_threaded = seconds([&] {
		build_order(pair.domain, dim + 1, infinite_value, order_direction::reverse_filtration,
		            binomial, true);
	});
	print_row("simplex ordering", order_serial, order_threaded);

	pipeline_options options;
	options.max_dim = dim;
	options.witnesses = false;

	barcode image_threaded, image_serial;
	double image_threaded_secs = seconds([&] { image_threaded = compute_image_barcode(pair, options); });
	options.parallel = false;
	double image_serial_secs = seconds([&] { image_serial = compute_image_barcode(pair, options); });
	print_row("image barcode", image_serial_secs, image_threaded_secs);
	if (!barcode::same_intervals(image_threaded, image_serial)) {
		std::printf("error: serial and threaded image barcodes disagree\n");
		return 1;
	}

	options.parallel = true;
	double single_secs = seconds([&] { compute_single_barcode(pair.codomain, options); });
	std::printf("%-34s single %9.3f s   image %11.3f s   ratio %6.2fx\n", "image vs single run",
	            single_secs, image_threaded_secs, image_threaded_secs / single_secs);

	if (n <= 12) {
		index_t grid_dim = std::min<index_t>(dim, 1);
		prime_field field(2);
		double grid_serial = seconds([&] { build_rank_grid(pair, grid_dim, field, infinite_value, false); });
		double grid_threaded = seconds([&] { build_rank_grid(pair, grid_dim, field, infinite_value, true); });
		print_row("oracle rank grid", grid_serial, grid_threaded);
	}
	return 0;
}
