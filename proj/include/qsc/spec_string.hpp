#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace qsc {

// "name:key=value,key=value" as used by the generator zoos.
struct SpecString {
	std::string name;
	std::map<std::string, std::string> params;

	static SpecString parse(std::string_view text);

	bool has(const std::string& key) const { return params.count(key) != 0; }
	long long get_int(const std::string& key) const;
	long long get_int(const std::string& key, long long fallback) const;
	double get_double(const std::string& key) const;
	double get_double(const std::string& key, double fallback) const;
	std::string get_string(const std::string& key, const std::string& fallback) const;
	// list separated by ';' e.g. "t=0;0.5;1"
	std::vector<double> get_doubles(const std::string& key) const;

	// rejects parameters not named in `allowed`
	void expect_only(std::initializer_list<const char*> allowed) const;
};

} // namespace qsc
