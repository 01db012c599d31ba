#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qsc/boolean/function.hpp"

namespace qsc::cli {

struct Options {
	bool json = false;
	bool csv = false;
	std::uint64_t seed = 1;
	int threads = 0;
	std::string out;
};

class Report {
public:
	nlohmann::json inputs = nlohmann::json::object();
	nlohmann::json results = nlohmann::json::object();
	nlohmann::json verdicts = nlohmann::json::object();

	void gate(const std::string& name, bool ok) { verdicts[name] = ok; }
	bool passed() const;

	void csv_header(std::vector<std::string> h) { header_ = std::move(h); }
	void csv_row(std::vector<std::string> r) { rows_.push_back(std::move(r)); }

	// full document; meta carries the only run-dependent fields
	nlohmann::json document(const std::string& command, double runtime_ms) const;
	void write_csv(std::ostream& os) const;
	void write_text(std::ostream& os, const std::string& command) const;

private:
	std::vector<std::string> header_;
	std::vector<std::vector<std::string>> rows_;
};

using Action = std::function<void(Report&)>;

// Filled by the callback of whichever subcommand was selected.
struct Context {
	Options options;
	std::string command;
	Action action;
};

// Registers a runnable subcommand. The action reads option values bound to
// storage it owns, so it is only invoked after parsing.
CLI::App* leaf(CLI::App& parent, Context& ctx, const std::string& name, const std::string& description, Action action);
// a subcommand that only groups others
CLI::App* group(CLI::App& parent, const std::string& name, const std::string& description);

std::string num(double v);

// Zoo spec or a saved function file. When n > 0 and the spec carries no
// n parameter, n is appended ("maj" with n = 3 becomes "maj:n=3").
BooleanFunction resolve_function(const std::string& spec, int n);

void add_analyze(CLI::App& app, Context& ctx);
void add_stability(CLI::App& app, Context& ctx);
void add_gaussian(CLI::App& app, Context& ctx);
void add_condorcet(CLI::App& app, Context& ctx);
void add_manip(CLI::App& app, Context& ctx);
void add_dynamics(CLI::App& app, Context& ctx);
void add_aggregate(CLI::App& app, Context& ctx);

} // namespace qsc::cli
