#pragma once

#include <cmath>
#include <random>
#include <utility>

#include "ripsimage/distance_matrix.hpp"

namespace testutil {

using namespace ripsimage;

// fixed mapping from engine output to doubles, identical across platforms
inline double uniform01(std::mt19937_64& rng) {
	return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline distance_matrix random_metric(std::mt19937_64& rng, index_t n, double lo = 0.05,
                                     double hi = 1.0) {
	distance_matrix m(n);
	for (index_t i = 1; i < n; ++i)
		for (index_t j = 0; j < i; ++j) m.set(i, j, lo + (hi - lo) * uniform01(rng));
	return m;
}

// codomain entries in [lo, hi], domain = codomain plus a nonnegative bump
inline filtration_pair random_dominated_pair(std::mt19937_64& rng, index_t n) {
	distance_matrix codomain = random_metric(rng, n);
	distance_matrix domain(n);
	for (index_t i = 1; i < n; ++i)
		for (index_t j = 0; j < i; ++j) domain.set(i, j, codomain(i, j) + uniform01(rng));
	return {std::move(domain), std::move(codomain)};
}

// four points on the unit circle at angles 0, pi/2, pi, 3pi/2;
// domain = arc length, codomain = chord length
inline filtration_pair square_on_circle() {
	const double pi = std::acos(-1.0);
	distance_matrix arc(4), chord(4);
	const index_t adjacent[4][2] = {{1, 0}, {2, 1}, {3, 2}, {3, 0}};
	for (const auto& e : adjacent) {
		arc.set(e[0], e[1], pi / 2);
		chord.set(e[0], e[1], std::sqrt(2.0));
	}
	arc.set(2, 0, pi);
	arc.set(3, 1, pi);
	chord.set(2, 0, 2.0);
	chord.set(3, 1, 2.0);
	return {std::move(arc), std::move(chord)};
}

}
