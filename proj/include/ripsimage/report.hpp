#pragma once

#include <iosfwd>
#include <string>

#include "ripsimage/barcode.hpp"

namespace ripsimage {

enum class output_format { text, csv, json };

// deterministic: canonical interval order, shortest round-trip number formatting
void write_barcode(std::ostream& out, const barcode& bars, output_format format, bool witnesses);

std::string format_value(value_t v);

// inverse of the json writer; used for round-trip checks
barcode parse_barcode_json(const std::string& text);

}
