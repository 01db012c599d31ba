#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qsc {

inline constexpr int kMaxAlternatives = 8;

// A ranking lists alternatives from the top: order[0] is the favourite.
// Alternatives are 0..k-1 and print as letters a, b, c, ...
using Ranking = std::array<std::uint8_t, kMaxAlternatives>;

// All k! rankings, numbered by Lehmer code in lexicographic order, so index
// 0 is (a b c ...) and index k!-1 is the reversal.
class RankingTables {
public:
	explicit RankingTables(int k);

	int k() const noexcept { return k_; }
	std::uint32_t count() const noexcept { return count_; }
	const Ranking& order(std::uint32_t r) const { return order_[r]; }
	// position of alternative a in ranking r (0 = top)
	int position(std::uint32_t r, int a) const { return pos_[r][static_cast<std::size_t>(a)]; }
	bool prefers(std::uint32_t r, int a, int b) const { return position(r, a) < position(r, b); }
	// ranking obtained by swapping positions j and j+1
	std::uint32_t swap_adjacent(std::uint32_t r, int j) const
	{
		return swaps_[static_cast<std::size_t>(r) * static_cast<std::size_t>(k_ - 1) + static_cast<std::size_t>(j)];
	}

	std::uint32_t index_of(const Ranking& order) const;
	std::uint32_t index_of(std::span<const int> order) const;
	// Smallest window size w such that r and s agree outside some window of
	// w consecutive positions; 0 when r == s.
	int span(std::uint32_t r, std::uint32_t s) const;

	std::string to_string(std::uint32_t r) const;
	std::uint32_t parse(std::string_view letters) const;

private:
	int k_;
	std::uint32_t count_;
	std::vector<Ranking> order_;
	std::vector<Ranking> pos_;
	std::vector<std::uint32_t> swaps_;
	std::vector<std::uint8_t> span_;
};

// shared immutable tables, built once per k
const RankingTables& ranking_tables(int k);

std::uint64_t factorial(int k);
// (k!)^n, throwing std::length_error when it exceeds `budget`
std::uint64_t profile_count(int k, int n, std::uint64_t budget);

char alternative_letter(int a);
int alternative_from_letter(char c);

// Profiles are n ranking indices. The profile index is mixed radix with
// voter 0 most significant.
using Profile = std::vector<std::uint32_t>;

std::uint64_t encode_profile(std::span<const std::uint32_t> profile, int k);
Profile decode_profile(std::uint64_t index, int k, int n);
// "abcd,cadb"
std::string profile_to_string(std::span<const std::uint32_t> profile, int k);
Profile parse_profile(std::string_view text, int k);

} // namespace qsc
