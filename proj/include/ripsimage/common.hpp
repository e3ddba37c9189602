#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace ripsimage {

using index_t = std::int64_t;
using value_t = double;
using coefficient_t = std::uint16_t;

constexpr value_t infinite_value = std::numeric_limits<value_t>::infinity();

// malformed input text (file format violations)
struct parse_error : std::runtime_error {
	using std::runtime_error::runtime_error;
};

// a computation reached a state the algorithm guarantees impossible
struct internal_error : std::logic_error {
	using std::logic_error::logic_error;
};

}
