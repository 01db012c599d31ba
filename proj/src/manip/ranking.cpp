#include "qsc/manip/ranking.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace qsc {

namespace {

constexpr int kSpanTableMaxK = 6;

int raw_span(const Ranking& a, const Ranking& b, int k)
{
	int lo = -1;
	int hi = -1;
	for (int j = 0; j < k; ++j) {
		if (a[static_cast<std::size_t>(j)] != b[static_cast<std::size_t>(j)]) {
			if (lo < 0)
				lo = j;
			hi = j;
		}
	}
	return lo < 0 ? 0 : hi - lo + 1;
}

} // namespace

std::uint64_t factorial(int k)
{
	std::uint64_t v = 1;
	for (int i = 2; i <= k; ++i)
		v *= static_cast<std::uint64_t>(i);
	return v;
}

std::uint64_t profile_count(int k, int n, std::uint64_t budget)
{
	if (k < 1 || k > kMaxAlternatives)
		throw std::invalid_argument("k must be in [1, 8]");
	if (n < 1)
		throw std::invalid_argument("n must be positive");
	const std::uint64_t base = factorial(k);
	std::uint64_t v = 1;
	for (int i = 0; i < n; ++i) {
		if (v > budget / base)
			throw std::length_error("(k!)^n = " + std::to_string(base) + "^" + std::to_string(n) + " exceeds the budget of "
				+ std::to_string(budget) + " profiles");
		v *= base;
	}
	return v;
}

char alternative_letter(int a)
{
	return static_cast<char>('a' + a);
}

int alternative_from_letter(char c)
{
	if (c < 'a' || c >= 'a' + kMaxAlternatives)
		throw std::invalid_argument(std::string("bad alternative '") + c + "'");
	return c - 'a';
}

RankingTables::RankingTables(int k) : k_(k), count_(static_cast<std::uint32_t>(factorial(k)))
{
	if (k < 1 || k > kMaxAlternatives)
		throw std::invalid_argument("k must be in [1, 8]");
	order_.resize(count_);
	pos_.resize(count_);
	Ranking cur{};
	std::iota(cur.begin(), cur.begin() + k, std::uint8_t{0});
	// next_permutation walks lexicographic order, which is Lehmer order
	for (std::uint32_t r = 0; r < count_; ++r) {
		order_[r] = cur;
		for (int j = 0; j < k; ++j)
			pos_[r][cur[static_cast<std::size_t>(j)]] = static_cast<std::uint8_t>(j);
		std::next_permutation(cur.begin(), cur.begin() + k);
	}
	if (k >= 2) {
		swaps_.resize(static_cast<std::size_t>(count_) * static_cast<std::size_t>(k - 1));
		for (std::uint32_t r = 0; r < count_; ++r)
			for (int j = 0; j + 1 < k; ++j) {
				Ranking s = order_[r];
				std::swap(s[static_cast<std::size_t>(j)], s[static_cast<std::size_t>(j + 1)]);
				swaps_[static_cast<std::size_t>(r) * static_cast<std::size_t>(k - 1) + static_cast<std::size_t>(j)] = index_of(s);
			}
	}
	if (k <= kSpanTableMaxK) {
		span_.resize(static_cast<std::size_t>(count_) * count_);
		for (std::uint32_t r = 0; r < count_; ++r)
			for (std::uint32_t s = 0; s < count_; ++s)
				span_[static_cast<std::size_t>(r) * count_ + s] = static_cast<std::uint8_t>(raw_span(order_[r], order_[s], k));
	}
}

std::uint32_t RankingTables::index_of(const Ranking& order) const
{
	std::uint32_t idx = 0;
	for (int i = 0; i < k_; ++i) {
		std::uint32_t smaller = 0;
		for (int j = i + 1; j < k_; ++j)
			if (order[static_cast<std::size_t>(j)] < order[static_cast<std::size_t>(i)])
				++smaller;
		idx = idx * static_cast<std::uint32_t>(k_ - i) + smaller;
	}
	return idx;
}

std::uint32_t RankingTables::index_of(std::span<const int> order) const
{
	if (static_cast<int>(order.size()) != k_)
		throw std::invalid_argument("ranking has the wrong length");
	Ranking r{};
	std::uint32_t seen = 0;
	for (int i = 0; i < k_; ++i) {
		const int a = order[static_cast<std::size_t>(i)];
		if (a < 0 || a >= k_ || (seen >> a) & 1u)
			throw std::invalid_argument("ranking is not a permutation");
		seen |= 1u << a;
		r[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(a);
	}
	return index_of(r);
}

int RankingTables::span(std::uint32_t r, std::uint32_t s) const
{
	if (!span_.empty())
		return span_[static_cast<std::size_t>(r) * count_ + s];
	return raw_span(order_[r], order_[s], k_);
}

std::string RankingTables::to_string(std::uint32_t r) const
{
	std::string s;
	for (int j = 0; j < k_; ++j)
		s += alternative_letter(order_[r][static_cast<std::size_t>(j)]);
	return s;
}

std::uint32_t RankingTables::parse(std::string_view letters) const
{
	std::vector<int> order;
	for (char c : letters)
		if (c != ' ')
			order.push_back(alternative_from_letter(c));
	return index_of(order);
}

const RankingTables& ranking_tables(int k)
{
	if (k < 1 || k > kMaxAlternatives)
		throw std::invalid_argument("k must be in [1, 8]");
	static std::array<std::unique_ptr<RankingTables>, kMaxAlternatives + 1> cache;
	static std::array<std::once_flag, kMaxAlternatives + 1> once;
	std::call_once(once[static_cast<std::size_t>(k)], [k] { cache[static_cast<std::size_t>(k)] = std::make_unique<RankingTables>(k); });
	return *cache[static_cast<std::size_t>(k)];
}

std::uint64_t encode_profile(std::span<const std::uint32_t> profile, int k)
{
	const std::uint64_t base = factorial(k);
	std::uint64_t idx = 0;
	for (std::uint32_t r : profile)
		idx = idx * base + r;
	return idx;
}

Profile decode_profile(std::uint64_t index, int k, int n)
{
	const std::uint64_t base = factorial(k);
	Profile p(static_cast<std::size_t>(n));
	for (int i = n - 1; i >= 0; --i) {
		p[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(index % base);
		index /= base;
	}
	return p;
}

std::string profile_to_string(std::span<const std::uint32_t> profile, int k)
{
	const RankingTables& t = ranking_tables(k);
	std::string s;
	for (std::size_t i = 0; i < profile.size(); ++i) {
		if (i)
			s += ',';
		s += t.to_string(profile[i]);
	}
	return s;
}

Profile parse_profile(std::string_view text, int k)
{
	const RankingTables& t = ranking_tables(k);
	Profile p;
	std::size_t start = 0;
	while (start <= text.size()) {
		const std::size_t comma = text.find(',', start);
		const std::string_view part = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
		p.push_back(t.parse(part));
		if (comma == std::string_view::npos)
			break;
		start = comma + 1;
	}
	return p;
}

} // namespace qsc
