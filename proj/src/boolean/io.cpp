#include "qsc/boolean/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace qsc {

namespace {

constexpr char kMagic[4] = {'B', 'F', 'N', '1'};

bool ends_with(const std::string& s, const std::string& suffix)
{
	return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

template <class T>
T to_little(T v)
{
	if constexpr (std::endian::native == std::endian::big) {
		unsigned char b[sizeof(T)];
		std::memcpy(b, &v, sizeof(T));
		for (std::size_t i = 0; i < sizeof(T) / 2; ++i)
			std::swap(b[i], b[sizeof(T) - 1 - i]);
		std::memcpy(&v, b, sizeof(T));
	}
	return v;
}

} // namespace

nlohmann::json to_json(const BooleanFunction& f)
{
	return {{"n", f.n()}, {"codomain", to_string(f.codomain())}, {"values", f.values()}};
}

BooleanFunction function_from_json(const nlohmann::json& j)
{
	const int n = j.at("n").get<int>();
	std::vector<double> values = j.at("values").get<std::vector<double>>();
	const Codomain c = j.contains("codomain") ? codomain_from_string(j.at("codomain").get<std::string>())
											  : infer_codomain(values);
	return BooleanFunction(n, std::move(values), c);
}

Codomain infer_codomain(const std::vector<double>& values)
{
	bool pm = true;
	bool zo = true;
	for (double v : values) {
		pm = pm && (v == 1.0 || v == -1.0);
		zo = zo && (v == 0.0 || v == 1.0);
	}
	if (pm)
		return Codomain::PlusMinusOne;
	return zo ? Codomain::ZeroOne : Codomain::Real;
}

void write_bfn1(std::ostream& os, const BooleanFunction& f)
{
	os.write(kMagic, 4);
	const std::uint32_t n = to_little(static_cast<std::uint32_t>(f.n()));
	os.write(reinterpret_cast<const char*>(&n), sizeof n);
	for (double v : f.values()) {
		const double le = to_little(v);
		os.write(reinterpret_cast<const char*>(&le), sizeof le);
	}
	if (!os)
		throw std::runtime_error("failed writing BFN1 table");
}

BooleanFunction read_bfn1(std::istream& is)
{
	char magic[4] = {};
	std::uint32_t n = 0;
	if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
		throw std::runtime_error("missing BFN1 header");
	if (!is.read(reinterpret_cast<char*>(&n), sizeof n))
		throw std::runtime_error("truncated BFN1 header");
	n = to_little(n);
	BooleanFunction::check_arity(static_cast<int>(n));
	std::vector<double> values(std::size_t{1} << n);
	if (!is.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(values.size() * sizeof(double))))
		throw std::runtime_error("truncated BFN1 table");
	for (double& v : values)
		v = to_little(v);
	const Codomain c = infer_codomain(values);
	return BooleanFunction(static_cast<int>(n), std::move(values), c);
}

BooleanFunction load_function(const std::string& path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw std::runtime_error("cannot open " + path);
	if (ends_with(path, ".json"))
		return function_from_json(nlohmann::json::parse(in));
	return read_bfn1(in);
}

void save_function(const std::string& path, const BooleanFunction& f)
{
	std::ofstream out(path, std::ios::binary);
	if (!out)
		throw std::runtime_error("cannot open " + path);
	if (ends_with(path, ".json"))
		out << to_json(f).dump() << '\n';
	else
		write_bfn1(out, f);
}

} // namespace qsc
