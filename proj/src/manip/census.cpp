#include "qsc/manip/census.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <sstream>
#include <stdexcept>

#include "qsc/parallel.hpp"

namespace qsc {

namespace {

constexpr std::uint64_t kBlock = 1u << 14;

struct Narrowest {
	int r;
	std::uint32_t misreport;
	int outcome;
};

// Evaluates f on the profiles that differ from p only in voter i.
class VoterSlice {
public:
	VoterSlice(const SocialChoiceFunction& f, std::span<const std::uint32_t> p, int i)
		: f_(f), scratch_(p.begin(), p.end()), i_(static_cast<std::size_t>(i))
	{
		if (f.has_table()) {
			stride_ = 1;
			const std::uint64_t base = factorial(f.k());
			for (int j = f.n() - 1; j > i; --j)
				stride_ *= base;
			rest_ = encode_profile(p, f.k()) - p[i_] * stride_;
		}
	}

	int operator()(std::uint32_t tau)
	{
		if (f_.has_table())
			return f_.table()[rest_ + tau * stride_];
		scratch_[i_] = tau;
		return f_(scratch_);
	}

private:
	const SocialChoiceFunction& f_;
	Profile scratch_;
	std::size_t i_;
	std::uint64_t stride_ = 0;
	std::uint64_t rest_ = 0;
};

// narrowest beneficial misreport of voter i, r = 0 when none
Narrowest narrowest_misreport(const SocialChoiceFunction& f, std::span<const std::uint32_t> p, int i, int outcome, int limit)
{
	const RankingTables& t = ranking_tables(f.k());
	const std::uint32_t truth = p[static_cast<std::size_t>(i)];
	const int cut = t.position(truth, outcome);
	Narrowest best{0, 0, outcome};
	if (cut == 0)
		return best;
	VoterSlice slice(f, p, i);
	for (std::uint32_t tau = 0; tau < t.count(); ++tau) {
		const int w = t.span(truth, tau);
		if (w == 0 || w > limit || (best.r && w >= best.r))
			continue;
		const int v = slice(tau);
		if (t.position(truth, v) < cut) {
			best = {w, tau, v};
			if (w == 2)
				break;
		}
	}
	return best;
}

int narrowest_window(const SocialChoiceFunction& f, std::span<const std::uint32_t> p, int outcome)
{
	int best = 0;
	for (int i = 0; i < f.n() && best != 2; ++i) {
		const Narrowest m = narrowest_misreport(f, p, i, outcome, best ? best - 1 : f.k());
		if (m.r)
			best = m.r;
	}
	return best;
}

} // namespace

bool is_valid_manipulation(const SocialChoiceFunction& f, const ManipulationRecord& m)
{
	if (static_cast<int>(m.profile.size()) != f.n() || m.voter < 0 || m.voter >= f.n())
		return false;
	const RankingTables& t = ranking_tables(f.k());
	Profile q = m.profile;
	q[static_cast<std::size_t>(m.voter)] = m.misreport;
	const std::uint32_t truth = m.profile[static_cast<std::size_t>(m.voter)];
	return f(m.profile) == m.outcome && f(q) == m.manipulated_outcome && t.prefers(truth, m.manipulated_outcome, m.outcome)
		&& t.span(truth, m.misreport) == m.r;
}

std::string describe(const ManipulationRecord& m, int k)
{
	const RankingTables& t = ranking_tables(k);
	std::ostringstream os;
	os << "profile " << profile_to_string(m.profile, k) << ": voter " << m.voter + 1 << " reports "
	   << t.to_string(m.misreport) << " (window " << m.r << "), outcome " << alternative_letter(m.outcome) << " -> "
	   << alternative_letter(m.manipulated_outcome);
	return os.str();
}

std::optional<ManipulationRecord> is_manipulable_at(const SocialChoiceFunction& f, std::span<const std::uint32_t> profile, int r_max)
{
	if (static_cast<int>(profile.size()) != f.n())
		throw std::invalid_argument("profile has the wrong number of voters");
	const int limit = r_max > 0 ? std::min(r_max, f.k()) : f.k();
	const int outcome = f(profile);
	std::optional<ManipulationRecord> best;
	for (int i = 0; i < f.n(); ++i) {
		const Narrowest m = narrowest_misreport(f, profile, i, outcome, best ? best->r - 1 : limit);
		if (m.r)
			best = ManipulationRecord{Profile(profile.begin(), profile.end()), i, m.misreport, m.r, outcome, m.outcome};
		if (best && best->r == 2)
			break;
	}
	return best;
}

std::vector<std::uint8_t> manipulation_window_table(SocialChoiceFunction& f, int threads)
{
	const std::uint64_t total = profile_count(f.k(), f.n(), kExhaustiveProfileBudget);
	f.tabulate(threads);
	std::vector<std::uint8_t> w(total);
	parallel_for(
		(total + kBlock - 1) / kBlock,
		[&](std::size_t b) {
			enumerate_profiles(f.k(), f.n(), b * kBlock, std::min(total, (b + 1) * kBlock), [&](std::uint64_t idx, const Profile& p) {
				w[idx] = static_cast<std::uint8_t>(narrowest_window(f, p, f.at(idx)));
			});
		},
		threads);
	return w;
}

CensusMode census_mode_from_string(const std::string& s)
{
	if (s == "auto")
		return CensusMode::Auto;
	if (s == "exhaustive")
		return CensusMode::Exhaustive;
	if (s == "mc")
		return CensusMode::MonteCarlo;
	throw std::invalid_argument("unknown census mode '" + s + "'");
}

CensusReport manipulation_census(SocialChoiceFunction& f, int r_max, CensusMode mode, std::uint64_t samples, std::uint64_t seed, int threads)
{
	if (r_max < 0)
		throw std::invalid_argument("r_max must be nonnegative");
	CensusReport rep;
	rep.k = f.k();
	rep.n = f.n();
	rep.r_max = r_max;
	rep.p_r.assign(static_cast<std::size_t>(r_max) + 1, 0.0);
	rep.p_r_se.assign(static_cast<std::size_t>(r_max) + 1, 0.0);
	if (mode == CensusMode::Auto) {
		bool small = true;
		try {
			profile_count(f.k(), f.n(), kExhaustiveProfileBudget);
		} catch (const std::length_error&) {
			small = false;
		}
		mode = small ? CensusMode::Exhaustive : CensusMode::MonteCarlo;
	}
	if (mode == CensusMode::Exhaustive) {
		const std::vector<std::uint8_t> w = manipulation_window_table(f, threads);
		std::array<std::uint64_t, kMaxAlternatives + 1> hist{};
		for (auto v : w)
			++hist[v];
		const double total = static_cast<double>(w.size());
		rep.exhaustive = true;
		rep.profiles = w.size();
		rep.p_manip = static_cast<double>(w.size() - hist[0]) / total;
		std::uint64_t cum = 0;
		for (int r = 2; r <= r_max; ++r) {
			if (r <= f.k())
				cum += hist[static_cast<std::size_t>(r)];
			rep.p_r[static_cast<std::size_t>(r)] = static_cast<double>(cum) / total;
		}
		return rep;
	}
	if (samples == 0)
		throw std::invalid_argument("Monte Carlo census needs samples > 0");
	constexpr std::size_t K = kMaxAlternatives + 1;
	const std::uint32_t base = static_cast<std::uint32_t>(factorial(f.k()));
	const auto est = monte_carlo<K>(
		samples, seed,
		[&](SplitMix64& rng, std::array<double, K>& out) {
			Profile p(static_cast<std::size_t>(f.n()));
			for (auto& r : p)
				r = static_cast<std::uint32_t>(rng.below(base));
			const int w = narrowest_window(f, p, f(p));
			out[0] = w ? 1.0 : 0.0;
			for (std::size_t r = 1; r < K; ++r)
				out[r] = (w && w <= static_cast<int>(r)) ? 1.0 : 0.0;
		},
		threads);
	rep.profiles = samples;
	rep.p_manip = est[0].mean();
	rep.p_manip_se = est[0].std_error();
	for (int r = 2; r <= r_max; ++r) {
		const auto& m = est[static_cast<std::size_t>(std::min(r, kMaxAlternatives))];
		rep.p_r[static_cast<std::size_t>(r)] = m.mean();
		rep.p_r_se[static_cast<std::size_t>(r)] = m.std_error();
	}
	return rep;
}

PairEstimate manipulation_pair_estimate(const SocialChoiceFunction& f, std::uint64_t samples, std::uint64_t seed, int threads)
{
	if (f.k() < 4)
		throw std::invalid_argument("the four-window pair estimator needs k >= 4");
	const RankingTables& t = ranking_tables(f.k());
	const std::uint32_t base = t.count();
	const auto est = monte_carlo<1>(
		samples, seed,
		[&](SplitMix64& rng, std::array<double, 1>& out) {
			Profile p(static_cast<std::size_t>(f.n()));
			for (auto& r : p)
				r = static_cast<std::uint32_t>(rng.below(base));
			const auto i = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(f.n())));
			const auto j = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(f.k() - 3)));
			Ranking o = t.order(p[i]);
			// uniform reordering of o[j..j+3]
			for (std::size_t s = 3; s > 0; --s)
				std::swap(o[j + s], o[j + rng.below(s + 1)]);
			Profile q = p;
			q[i] = t.index_of(o);
			out[0] = t.prefers(p[i], f(q), f(p)) ? 1.0 : 0.0;
		},
		threads);
	return {est[0].mean(), est[0].std_error(), samples};
}

ManipulationRecord gs_witness(SocialChoiceFunction& f, int threads)
{
	const std::uint64_t total = profile_count(f.k(), f.n(), kExhaustiveProfileBudget);
	f.tabulate(threads);
	const std::uint32_t range = scf_range(f, threads);
	if (std::popcount(range) < 3)
		throw std::invalid_argument(f.name() + " attains fewer than three outcomes");
	if (const int d = dictator_on_range(f, threads); d >= 0)
		throw std::invalid_argument(f.name() + " is a dictatorship of voter " + std::to_string(d + 1) + " on its range");
	const std::uint64_t blocks = (total + kBlock - 1) / kBlock;
	std::vector<std::optional<ManipulationRecord>> hit(blocks);
	parallel_for(
		blocks,
		[&](std::size_t b) {
			const std::uint64_t end = std::min(total, (b + 1) * kBlock);
			for (std::uint64_t idx = b * kBlock; idx < end && !hit[b]; ++idx)
				hit[b] = is_manipulable_at(f, decode_profile(idx, f.k(), f.n()));
		},
		threads);
	for (auto& h : hit)
		if (h)
			return *h;
	throw std::logic_error("no manipulation point found for " + f.name()
		+ " although it has three outcomes and no dictator; table size " + std::to_string(total));
}

} // namespace qsc
