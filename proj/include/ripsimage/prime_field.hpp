#pragma once

#include <vector>

#include "ripsimage/common.hpp"

namespace ripsimage {

constexpr coefficient_t max_modulus = 1 << 15;

inline bool is_prime(index_t m) {
	if (m < 2) return false;
	for (index_t a = 2; a * a <= m; ++a)
		if (m % a == 0) return false;
	return true;
}

// arithmetic in Z/pZ with a precomputed inverse table
class prime_field {
public:
	explicit prime_field(coefficient_t modulus) : modulus_(modulus) {
		if (!is_prime(modulus) || modulus >= max_modulus)
			throw std::invalid_argument("modulus must be a prime below 2^15, got " +
			                            std::to_string(modulus));
		inverse_.resize(modulus);
		inverse_[1] = 1;
		// inverse(a) = -(m/a) * inverse(m mod a), and m mod a < a
		for (coefficient_t a = 2; a < modulus; ++a)
			inverse_[a] = static_cast<coefficient_t>(
			    modulus - (static_cast<index_t>(inverse_[modulus % a]) * (modulus / a)) % modulus);
	}

	coefficient_t modulus() const { return modulus_; }

	coefficient_t normalize(index_t raw) const {
		index_t r = raw % modulus_;
		return static_cast<coefficient_t>(r < 0 ? r + modulus_ : r);
	}

	coefficient_t add(coefficient_t a, coefficient_t b) const {
		coefficient_t s = a + b;
		return s >= modulus_ ? s - modulus_ : s;
	}

	coefficient_t sub(coefficient_t a, coefficient_t b) const {
		return a >= b ? a - b : a + modulus_ - b;
	}

	coefficient_t neg(coefficient_t a) const { return a == 0 ? 0 : modulus_ - a; }

	coefficient_t mul(coefficient_t a, coefficient_t b) const {
		return static_cast<coefficient_t>((static_cast<std::uint32_t>(a) * b) % modulus_);
	}

	coefficient_t inverse(coefficient_t a) const {
		if (a == 0) throw std::domain_error("inverse of zero");
		return inverse_[a % modulus_];
	}

private:
	coefficient_t modulus_;
	std::vector<coefficient_t> inverse_;
};

}
