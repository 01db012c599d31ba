#include "report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <ostream>

#include "qsc/boolean/generators.hpp"
#include "qsc/boolean/io.hpp"

namespace qsc::cli {

namespace {

std::string timestamp()
{
	const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
	std::tm tm{};
	gmtime_r(&now, &tm);
	char buf[32];
	std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
	return buf;
}

std::string csv_field(const std::string& s)
{
	if (s.find_first_of(",\"\n") == std::string::npos)
		return s;
	std::string q = "\"";
	for (char c : s) {
		if (c == '"')
			q += '"';
		q += c;
	}
	return q + '"';
}

void print_value(std::ostream& os, const std::string& key, const nlohmann::json& v, int indent)
{
	const std::string pad(static_cast<std::size_t>(indent), ' ');
	if (v.is_object()) {
		os << pad << key << ":\n";
		for (auto it = v.begin(); it != v.end(); ++it)
			print_value(os, it.key(), it.value(), indent + 2);
		return;
	}
	if (v.is_array() && v.size() > 16) {
		os << pad << key << ": [" << v.size() << " entries]\n";
		return;
	}
	if (v.is_array() && !v.empty() && v.front().is_object()) {
		os << pad << key << ":\n";
		for (std::size_t i = 0; i < v.size(); ++i)
			print_value(os, "[" + std::to_string(i) + "]", v[i], indent + 2);
		return;
	}
	os << pad << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
}

} // namespace

bool Report::passed() const
{
	for (const auto& v : verdicts)
		if (!v.get<bool>())
			return false;
	return true;
}

nlohmann::json Report::document(const std::string& command, double runtime_ms) const
{
	nlohmann::json d;
	d["command"] = command;
	d["inputs"] = inputs;
	d["results"] = results;
	d["verdicts"] = verdicts;
	d["passed"] = passed();
	d["meta"] = {{"runtime_ms", runtime_ms}, {"timestamp", timestamp()}};
	return d;
}

void Report::write_csv(std::ostream& os) const
{
	auto line = [&](const std::vector<std::string>& r) {
		for (std::size_t i = 0; i < r.size(); ++i)
			os << (i ? "," : "") << csv_field(r[i]);
		os << '\n';
	};
	if (!header_.empty())
		line(header_);
	for (const auto& r : rows_)
		line(r);
}

void Report::write_text(std::ostream& os, const std::string& command) const
{
	os << command << '\n';
	for (auto it = results.begin(); it != results.end(); ++it)
		print_value(os, it.key(), it.value(), 2);
	for (auto it = verdicts.begin(); it != verdicts.end(); ++it)
		os << (it.value().get<bool>() ? "PASS " : "FAIL ") << it.key() << '\n';
}

CLI::App* leaf(CLI::App& parent, Context& ctx, const std::string& name, const std::string& description, Action action)
{
	CLI::App* sub = parent.add_subcommand(name, description);
	sub->configurable();
	std::string full = parent.get_parent() ? parent.get_name() + " " + name : name;
	sub->callback([&ctx, full, action = std::move(action)] {
		ctx.command = full;
		ctx.action = action;
	});
	return sub;
}

CLI::App* group(CLI::App& parent, const std::string& name, const std::string& description)
{
	CLI::App* sub = parent.add_subcommand(name, description);
	sub->configurable();
	sub->require_subcommand(1);
	return sub;
}

std::string num(double v)
{
	char buf[40];
	std::snprintf(buf, sizeof buf, "%.12g", v);
	return buf;
}

BooleanFunction resolve_function(const std::string& spec, int n)
{
	if (spec.empty())
		throw std::invalid_argument("a function spec is required");
	if (std::filesystem::is_regular_file(spec))
		return load_function(spec);
	std::string s = spec;
	if (n > 0 && s.find("n=") == std::string::npos)
		s += (s.find(':') == std::string::npos ? ":n=" : ",n=") + std::to_string(n);
	return make_function(s);
}

} // namespace qsc::cli
