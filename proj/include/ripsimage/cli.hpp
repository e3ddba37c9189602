#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ripsimage/distance_matrix.hpp"
#include "ripsimage/image_pipeline.hpp"
#include "ripsimage/report.hpp"

namespace ripsimage {

enum class run_mode { image, single, oracle_check };

struct run_config {
	// witness simplices are opt-in on the command line
	run_config() { options.witnesses = false; }

	run_mode mode = run_mode::image;
	std::vector<std::string> inputs;  // [domain, codomain] or [codomain] for single mode
	input_format format = input_format::lower_distance;
	output_format output = output_format::text;
	pipeline_options options;
};

enum exit_code : int {
	exit_ok = 0,
	exit_internal = 1,
	exit_bad_input = 2,
	exit_dominance = 3,
	exit_oracle_mismatch = 4,
};

// runs one invocation; intervals go to out, diagnostics to err
int run(const run_config& config, std::ostream& out, std::ostream& err);

}
