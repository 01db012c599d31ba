#include "qsc/spec_string.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace qsc {

namespace {

std::string trim(std::string_view s)
{
	while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
		s.remove_prefix(1);
	while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
		s.remove_suffix(1);
	return std::string(s);
}

} // namespace

SpecString SpecString::parse(std::string_view text)
{
	SpecString out;
	const auto colon = text.find(':');
	out.name = trim(text.substr(0, colon));
	if (out.name.empty())
		throw std::invalid_argument("empty spec name in '" + std::string(text) + "'");
	if (colon == std::string_view::npos)
		return out;
	std::string_view rest = text.substr(colon + 1);
	while (!rest.empty()) {
		const auto comma = rest.find(',');
		const std::string_view item = rest.substr(0, comma);
		const auto eq = item.find('=');
		if (eq == std::string_view::npos)
			throw std::invalid_argument("expected key=value in '" + std::string(item) + "'");
		out.params[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
		if (comma == std::string_view::npos)
			break;
		rest.remove_prefix(comma + 1);
	}
	return out;
}

long long SpecString::get_int(const std::string& key) const
{
	const auto it = params.find(key);
	if (it == params.end())
		throw std::invalid_argument("spec '" + name + "' needs parameter " + key);
	long long v = 0;
	const auto& s = it->second;
	const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
	if (ec != std::errc() || ptr != s.data() + s.size())
		throw std::invalid_argument("parameter " + key + "=" + s + " is not an integer");
	return v;
}

long long SpecString::get_int(const std::string& key, long long fallback) const
{
	return has(key) ? get_int(key) : fallback;
}

double SpecString::get_double(const std::string& key) const
{
	const auto it = params.find(key);
	if (it == params.end())
		throw std::invalid_argument("spec '" + name + "' needs parameter " + key);
	std::size_t used = 0;
	double v = 0.0;
	try {
		v = std::stod(it->second, &used);
	} catch (const std::exception&) {
		used = 0;
	}
	if (used == 0 || used != it->second.size())
		throw std::invalid_argument("parameter " + key + "=" + it->second + " is not a number");
	return v;
}

double SpecString::get_double(const std::string& key, double fallback) const
{
	return has(key) ? get_double(key) : fallback;
}

std::string SpecString::get_string(const std::string& key, const std::string& fallback) const
{
	const auto it = params.find(key);
	return it == params.end() ? fallback : it->second;
}

std::vector<double> SpecString::get_doubles(const std::string& key) const
{
	const auto it = params.find(key);
	if (it == params.end())
		throw std::invalid_argument("spec '" + name + "' needs parameter " + key);
	std::vector<double> out;
	std::string_view rest = it->second;
	while (!rest.empty()) {
		const auto semi = rest.find(';');
		out.push_back(std::stod(std::string(rest.substr(0, semi))));
		if (semi == std::string_view::npos)
			break;
		rest.remove_prefix(semi + 1);
	}
	return out;
}

void SpecString::expect_only(std::initializer_list<const char*> allowed) const
{
	for (const auto& [key, value] : params) {
		const bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
		if (!ok)
			throw std::invalid_argument("spec '" + name + "' does not take parameter " + key);
	}
}

} // namespace qsc
