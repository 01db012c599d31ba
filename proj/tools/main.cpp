#include <chrono>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "report.hpp"

#include "qsc/parallel.hpp"

int main(int argc, char** argv)
{
	using namespace qsc::cli;
	CLI::App app{"Computational checks for voting, aggregation and Boolean function analysis"};
	// --h names the third pairwise rule, so help is long-form only
	app.set_help_flag("--help", "print this help and exit");
	app.fallthrough();
	app.require_subcommand(1);
	app.set_config("--config", "", "key = value manifest; [section] headers select subcommands");
	Context ctx;
	app.add_flag("--json", ctx.options.json, "print the JSON report");
	app.add_flag("--csv", ctx.options.csv, "print the tabular part as CSV");
	app.add_option("--seed", ctx.options.seed, "seed for every stochastic path")->capture_default_str();
	app.add_option("--threads", ctx.options.threads, "worker threads (default: QSC_THREADS or all cores)")
		->check(CLI::NonNegativeNumber);
	app.add_option("--out", ctx.options.out, "also write the JSON report to this path");

	add_analyze(app, ctx);
	add_stability(app, ctx);
	add_condorcet(app, ctx);
	add_gaussian(app, ctx);
	add_manip(app, ctx);
	add_dynamics(app, ctx);
	add_aggregate(app, ctx);

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		const int code = app.exit(e);
		return code == 0 ? 0 : 1;
	}
	if (!ctx.action) {
		std::cerr << "no runnable subcommand selected\n";
		return 1;
	}
	if (ctx.options.threads > 0)
		qsc::set_default_threads(ctx.options.threads);

	Report report;
	report.inputs["seed"] = ctx.options.seed;
	const auto start = std::chrono::steady_clock::now();
	try {
		ctx.action(report);
	} catch (const std::invalid_argument& e) {
		std::cerr << "error: " << e.what() << '\n';
		return 1;
	} catch (const std::length_error& e) {
		std::cerr << "error: " << e.what() << '\n';
		return 1;
	} catch (const std::domain_error& e) {
		std::cerr << "error: " << e.what() << '\n';
		return 1;
	} catch (const std::out_of_range& e) {
		std::cerr << "error: " << e.what() << '\n';
		return 1;
	} catch (const std::logic_error& e) {
		// raised by searches whose failure would contradict a theorem
		std::cerr << "gate failure: " << e.what() << '\n';
		return 2;
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << '\n';
		return 1;
	}
	const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
	const nlohmann::json doc = report.document(ctx.command, ms);

	if (!ctx.options.out.empty()) {
		std::ofstream os(ctx.options.out);
		if (!os) {
			std::cerr << "error: cannot write " << ctx.options.out << '\n';
			return 1;
		}
		os << doc.dump(2) << '\n';
	}
	if (ctx.options.json)
		std::cout << doc.dump(2) << '\n';
	else if (ctx.options.csv)
		report.write_csv(std::cout);
	else
		report.write_text(std::cout, ctx.command);
	return report.passed() ? 0 : 2;
}
