#include "ripsimage/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <utility>

#include "ripsimage/oracle.hpp"

namespace ripsimage {

namespace {

std::string read_file(const std::string& path) {
	std::ifstream in(path, std::ios::binary);
	if (!in) throw parse_error("cannot open input file: " + path);
	std::ostringstream buffer;
	buffer << in.rdbuf();
	return buffer.str();
}

}

int run(const run_config& config, std::ostream& out, std::ostream& err) {
	try {
		std::size_t expected = config.mode == run_mode::single ? 1 : 2;
		if (config.inputs.size() != expected) {
			err << "expected " << expected << " input file" << (expected == 1 ? "" : "s")
			    << ", got " << config.inputs.size() << "\n";
			return exit_bad_input;
		}
		std::vector<distance_matrix> matrices;
		for (const std::string& path : config.inputs)
			matrices.push_back(parse_distance_input(read_file(path), config.format));

		barcode bars;
		if (config.mode == run_mode::single) {
			bars = compute_single_barcode(matrices[0], config.options);
		} else {
			if (matrices[0].size() != matrices[1].size()) {
				err << "input sizes differ: " << matrices[0].size() << " vs "
				    << matrices[1].size() << " points\n";
				return exit_bad_input;
			}
			dominance_report report = validate_dominance(matrices[0], matrices[1]);
			if (!report.ok) {
				err << "first input must dominate the second entrywise; violations:\n";
				for (const dominance_violation& v : report.violations)
					err << "  d(" << v.i << "," << v.j << "): " << format_value(v.domain_value)
					    << " < " << format_value(v.codomain_value) << "\n";
				return exit_dominance;
			}
			filtration_pair pair{std::move(matrices[0]), std::move(matrices[1])};
			bars = compute_image_barcode(pair, config.options);
			if (config.mode == run_mode::oracle_check) {
				barcode reference =
				    image_barcode_oracle(pair, config.options.max_dim, config.options.modulus,
				                         config.options.threshold, config.options.parallel);
				if (!barcode::same_intervals(bars, reference)) {
					err << "barcode disagrees with the rank oracle\n";
					err << "reduction:\n";
					write_barcode(err, bars, output_format::text, false);
					err << "oracle:\n";
					write_barcode(err, reference, output_format::text, false);
					return exit_oracle_mismatch;
				}
				err << "barcode agrees with the rank oracle\n";
			}
		}
		write_barcode(out, bars, config.output, config.options.witnesses);
		return exit_ok;
	} catch (const parse_error& e) {
		err << "error: " << e.what() << "\n";
		return exit_bad_input;
	} catch (const oracle_size_error& e) {
		err << "error: " << e.what() << "\n";
		return exit_bad_input;
	} catch (const std::invalid_argument& e) {
		err << "error: " << e.what() << "\n";
		return exit_bad_input;
	} catch (const internal_error& e) {
		err << "internal error: " << e.what() << "\n";
		return exit_internal;
	} catch (const std::exception& e) {
		err << "internal error: " << e.what() << "\n";
		return exit_internal;
	}
}

}
