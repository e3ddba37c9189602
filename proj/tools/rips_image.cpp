#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "ripsimage/cli.hpp"

int main(int argc, char** argv) {
	using namespace ripsimage;

	CLI::App app{
	    "barcode of the image of persistent homology induced by the inclusion of the\n"
	    "Vietoris-Rips filtration of a dominating dissimilarity into that of a smaller one"};

	run_config config;
	config.options.witnesses = false;
	bool no_clearing = false, no_shortcut = false, serial = false;

	app.add_option("inputs", config.inputs,
	               "dominating input, then dominated input (one input with --mode single)")
	    ->required()
	    ->expected(1, 2);
	app.add_option("--dim", config.options.max_dim, "largest homology degree to compute")
	    ->capture_default_str()
	    ->check(CLI::NonNegativeNumber);
	app.add_option("--threshold", config.options.threshold,
	               "only build simplices whose dominating diameter is at most this value")
	    ->check(CLI::NonNegativeNumber);
	app.add_option("--modulus", config.options.modulus, "coefficient field F_p, p prime")
	    ->capture_default_str();

	std::map<std::string, input_format> formats{
	    {"lower-distance", input_format::lower_distance},
	    {"full-matrix", input_format::full_matrix},
	    {"point-cloud", input_format::point_cloud}};
	app.add_option("--format", config.format, "input file format")
	    ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
	    ->default_str("lower-distance");

	std::map<std::string, output_format> outputs{{"text", output_format::text},
	                                             {"csv", output_format::csv},
	                                             {"json", output_format::json}};
	app.add_option("--output", config.output, "interval output format")
	    ->transform(CLI::CheckedTransformer(outputs, CLI::ignore_case))
	    ->default_str("text");

	std::map<std::string, run_mode> modes{{"image", run_mode::image},
	                                      {"single", run_mode::single},
	                                      {"oracle-check", run_mode::oracle_check}};
	app.add_option("--mode", config.mode,
	               "image barcode, single-filtration barcode, or image verified "
	               "against a brute-force rank computation")
	    ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case))
	    ->default_str("image");

	app.add_flag("--witnesses", config.options.witnesses,
	             "report a birth and death simplex for each interval");
	app.add_flag("--no-clearing", no_clearing, "disable clearing of paired columns");
	app.add_flag("--no-shortcut", no_shortcut, "disable the emergent-pair shortcut");
	app.add_flag("--serial", serial, "disable multithreaded kernels");

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp&) {
		std::cout << app.help();
		return exit_ok;
	} catch (const CLI::ParseError& e) {
		std::cerr << "error: " << e.what() << "\n";
		return exit_bad_input;
	}

	config.options.clearing = !no_clearing;
	config.options.emergent_shortcut = !no_shortcut;
	config.options.parallel = !serial;
	if (!is_prime(config.options.modulus) || config.options.modulus >= max_modulus) {
		std::cerr << "error: modulus must be a prime below 2^15, got "
		          << config.options.modulus << "\n";
		return exit_bad_input;
	}

	return run(config, std::cout, std::cerr);
}
