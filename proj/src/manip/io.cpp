#include "qsc/manip/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace qsc {

namespace {

constexpr char kMagic[4] = {'S', 'C', 'F', '1'};

std::uint32_t to_little(std::uint32_t v)
{
	if constexpr (std::endian::native == std::endian::big)
		v = ((v & 0xFFu) << 24) | ((v & 0xFF00u) << 8) | ((v >> 8) & 0xFF00u) | (v >> 24);
	return v;
}

} // namespace

void write_scf1(std::ostream& os, SocialChoiceFunction& f)
{
	f.tabulate();
	os.write(kMagic, 4);
	for (int v : {f.k(), f.n()}) {
		const std::uint32_t le = to_little(static_cast<std::uint32_t>(v));
		os.write(reinterpret_cast<const char*>(&le), sizeof le);
	}
	os.write(reinterpret_cast<const char*>(f.table().data()), static_cast<std::streamsize>(f.table().size()));
	if (!os)
		throw std::runtime_error("failed writing SCF1 table");
}

SocialChoiceFunction read_scf1(std::istream& is)
{
	char magic[4] = {};
	if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
		throw std::runtime_error("missing SCF1 header");
	std::uint32_t kn[2] = {};
	if (!is.read(reinterpret_cast<char*>(kn), sizeof kn))
		throw std::runtime_error("truncated SCF1 header");
	const int k = static_cast<int>(to_little(kn[0]));
	const int n = static_cast<int>(to_little(kn[1]));
	std::vector<std::uint8_t> table(profile_count(k, n, kScfTableBudget));
	if (!is.read(reinterpret_cast<char*>(table.data()), static_cast<std::streamsize>(table.size())))
		throw std::runtime_error("truncated SCF1 table");
	return SocialChoiceFunction(k, n, std::move(table));
}

void save_scf(const std::string& path, SocialChoiceFunction& f)
{
	std::ofstream out(path, std::ios::binary);
	if (!out)
		throw std::runtime_error("cannot open " + path);
	write_scf1(out, f);
}

SocialChoiceFunction load_scf(const std::string& path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw std::runtime_error("cannot open " + path);
	return read_scf1(in);
}

} // namespace qsc
