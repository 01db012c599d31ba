#include "qsc/boolean/structure.hpp"

#include <cmath>
#include <stdexcept>

#include "qsc/boolean/analysis.hpp"
#include "qsc/boolean/fourier.hpp"

namespace qsc {

namespace {

struct Restriction {
	std::uint64_t mask = 0;
	std::uint64_t values = 0;
};

void restricted_influences(const BooleanFunction& f, const Restriction& r, std::vector<double>& inf, double& mean)
{
	const int n = f.n();
	inf.assign(static_cast<std::size_t>(n), 0.0);
	double s = 0.0;
	std::uint64_t count = 0;
	for (std::uint64_t x = 0; x < f.size(); ++x) {
		if ((x & r.mask) != r.values)
			continue;
		s += f[x];
		++count;
		for (int j = 0; j < n; ++j) {
			const std::uint64_t bit = std::uint64_t{1} << j;
			if ((r.mask & bit) || (x & bit))
				continue;
			const double d = (f[x | bit] - f[x]) / 2.0;
			inf[static_cast<std::size_t>(j)] += d * d;
		}
	}
	mean = s / static_cast<double>(count);
	for (double& v : inf)
		v /= static_cast<double>(count) / 2.0;
}

} // namespace

DecisionTree decision_tree_regularize(const BooleanFunction& f, double tau, double eps)
{
	if (!(tau > 0.0) || !(eps > 0.0))
		throw std::domain_error("tau and eps must be positive");
	DecisionTree tree;
	tree.depth_bound = static_cast<int>(std::ceil(2.0 + total_influence(f) / (tau * eps)));

	std::vector<Restriction> restrictions;
	std::vector<double> inf;
	tree.nodes.push_back({});
	restrictions.push_back({});
	tree.nodes[0].mass = 1.0;
	for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
		const Restriction r = restrictions[id];
		double mean = 0.0;
		restricted_influences(f, r, inf, mean);
		double total = 0.0;
		int best = -1;
		for (int j = 0; j < f.n(); ++j) {
			if (r.mask >> j & 1u)
				continue;
			total += inf[static_cast<std::size_t>(j)];
			if (best < 0 || inf[static_cast<std::size_t>(j)] > inf[static_cast<std::size_t>(best)])
				best = j;
		}
		DecisionTree::Node& node = tree.nodes[id];
		node.influence_sum = total;
		node.mean = mean;
		tree.depth = std::max(tree.depth, node.depth);
		if (total < tau || node.depth >= tree.depth_bound || best < 0) {
			if (total >= tau)
				tree.bad_leaf_mass += node.mass;
			continue;
		}
		node.var = best;
		const int depth = node.depth;
		const double mass = node.mass;
		for (int b = 0; b < 2; ++b) {
			DecisionTree::Node child;
			child.depth = depth + 1;
			child.mass = mass / 2.0;
			Restriction cr = r;
			cr.mask |= std::uint64_t{1} << best;
			if (b)
				cr.values |= std::uint64_t{1} << best;
			tree.nodes[id].child[b] = static_cast<int>(tree.nodes.size());
			tree.nodes.push_back(child);
			restrictions.push_back(cr);
		}
	}
	tree.ok = tree.bad_leaf_mass <= eps + 1e-12 && tree.depth <= tree.depth_bound;
	return tree;
}

FknReport fkn_analysis(const BooleanFunction& f)
{
	if (f.n() < 1)
		throw std::invalid_argument("FKN analysis needs at least one coordinate");
	const FourierExpansion c = wht(f);
	FknReport rep;
	double best = -1.0;
	for (int i = 0; i < f.n(); ++i) {
		const double v = c[std::uint64_t{1} << i];
		rep.level1_weight += v * v;
		if (std::abs(v) > best) {
			best = std::abs(v);
			rep.dictator = i;
			rep.sign = v < 0 ? -1 : 1;
		}
	}
	std::uint64_t differ = 0;
	for (std::uint64_t x = 0; x < f.size(); ++x)
		if (f[x] != rep.sign * sign_of(x, rep.dictator))
			++differ;
	rep.distance = static_cast<double>(differ) / static_cast<double>(f.size());
	rep.bound = kFknConstant * (1.0 - rep.level1_weight);
	rep.balanced = std::abs(c[0]) <= 1e-9;
	rep.ok = rep.distance <= rep.bound + 1e-12;
	return rep;
}

} // namespace qsc
