#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qsc/boolean/function.hpp"
#include "qsc/manip/ranking.hpp"

namespace qsc {

inline constexpr std::uint64_t kScfTableBudget = 100'000'000;
inline constexpr std::uint64_t kExhaustiveProfileBudget = 10'000'000;

// Social choice function S_k^n -> [k], either a named rule evaluated on
// demand or a dense table indexed by profile index.
class SocialChoiceFunction {
public:
	using Rule = std::function<int(std::span<const std::uint32_t>)>;
	using TiePredicate = std::function<bool(std::span<const std::uint32_t>)>;

	SocialChoiceFunction(int k, int n, std::string name, Rule rule, std::string tie_break = "none");
	SocialChoiceFunction(int k, int n, std::vector<std::uint8_t> table, std::string name = "table");

	int k() const noexcept { return k_; }
	int n() const noexcept { return n_; }
	const std::string& name() const noexcept { return name_; }
	// how ties are broken; manipulability depends on it
	const std::string& tie_break() const noexcept { return tie_break_; }

	// (k!)^n; throws past kScfTableBudget when a table is needed
	std::uint64_t profiles() const { return profile_count(k_, n_, UINT64_MAX / 64); }
	bool has_table() const noexcept { return !table_.empty(); }
	// no-op when a table already exists
	void tabulate(int threads = 0);
	const std::vector<std::uint8_t>& table() const noexcept { return table_; }

	int operator()(std::span<const std::uint32_t> profile) const;
	int at(std::uint64_t index) const;

	// scoring rules report whether the top score was shared at a profile
	void set_tie_predicate(TiePredicate p) { tied_ = std::move(p); }
	bool tied(std::span<const std::uint32_t> profile) const { return tied_ ? tied_(profile) : false; }

private:
	int k_;
	int n_;
	std::string name_;
	std::string tie_break_;
	Rule rule_;
	TiePredicate tied_;
	std::vector<std::uint8_t> table_;
};

// Visits profiles with index in [begin,end) in order; fn(index, profile).
template <class Fn>
void enumerate_profiles(int k, int n, std::uint64_t begin, std::uint64_t end, Fn&& fn)
{
	if (begin >= end)
		return;
	const auto base = static_cast<std::uint32_t>(factorial(k));
	Profile p = decode_profile(begin, k, n);
	for (std::uint64_t idx = begin;;) {
		fn(idx, std::as_const(p));
		if (++idx == end)
			return;
		for (int i = n - 1; i >= 0; --i) {
			auto& r = p[static_cast<std::size_t>(i)];
			if (++r < base)
				break;
			r = 0;
		}
	}
}

// Plain rules. Scoring rules break ties toward the lowest alternative index.
SocialChoiceFunction plurality_rule(int k, int n);
SocialChoiceFunction borda_rule(int k, int n);
SocialChoiceFunction veto_rule(int k, int n);
SocialChoiceFunction copeland_rule(int k, int n);
SocialChoiceFunction dictator_rule(int k, int n, int voter);
// top of voter's ranking restricted to the alternatives in mask H
SocialChoiceFunction top_h_rule(int k, int n, int voter, std::uint32_t h_mask);
// a when g(x^{a,b}) = +1 and b otherwise; bit i of the Boolean input is set
// when voter i ranks a above b
SocialChoiceFunction two_valued_rule(int k, int n, int a, int b, const BooleanFunction& g);
SocialChoiceFunction constant_rule(int k, int n, int c);

// "borda", "plurality", "veto", "copeland", "dictator:i=1", "top_h:i=1,h=ab",
// "two_valued:a=a,b=b,g=majority" (g in majority|and|or|dictator|parity),
// "constant:c=a"; voters are 1-based, alternatives are letters.
SocialChoiceFunction make_scf(std::string_view spec, int k, int n);
std::vector<std::string> scf_zoo(int k, int n);

// bitmask of attained outcomes (exhaustive)
std::uint32_t scf_range(const SocialChoiceFunction& f, int threads = 0);
// voter i with f = top_{range(f)}(sigma_i) everywhere, or -1
int dictator_on_range(const SocialChoiceFunction& f, int threads = 0);

struct SymmetryAudit {
	std::uint64_t checked = 0;
	std::uint64_t violations = 0;
	std::uint64_t skipped_ties = 0;
	bool ok() const noexcept { return violations == 0; }
};
// f(sigma) = f(sigma permuted over voters), tested on all adjacent voter swaps
SymmetryAudit anonymity_audit(const SocialChoiceFunction& f, int threads = 0);
// f(pi o sigma) = pi(f(sigma)) over adjacent transpositions of alternatives;
// profiles where either side has a tied top score are skipped when
// skip_ties is set
SymmetryAudit neutrality_audit(const SocialChoiceFunction& f, bool skip_ties = true, int threads = 0);

} // namespace qsc
