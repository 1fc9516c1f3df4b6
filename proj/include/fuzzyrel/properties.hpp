#pragma once

/**
 * @file
 *
 * Property degrees, closures and interiors of fuzzy relations, and the
 * product-based criteria for preorders, equivalences and forward
 * compatibility of relation quadruples.
 */

#include "fuzzyrel/relation.hpp"

#include <string>
#include <utility>
#include <vector>

namespace fuzzyrel {

/// Equality tolerance used by every theorem-level criterion.
inline constexpr double criterion_tolerance = 1e-12;

struct PropertyReport {
	double reflexivity = 0.0;
	double symmetry = 0.0;
	double transitivity = 0.0;
};

namespace detail {

inline void require_square(const FuzzyRelation& r) {
	if (!r.is_square()) {
		throw ContractError("relation must be square (source labels equal target labels)");
	}
}

inline const ProductSpec max_min{ProductType::circle, Mode::harsh, System::S, Conjunction::min};

inline FuzzyRelation cellwise(const FuzzyRelation& a, const FuzzyRelation& b, double (*op)(double, double)) {
	std::vector<double> out(a.degrees().size());
	for (std::size_t k = 0; k < out.size(); ++k) {
		out[k] = op(a.degrees()[k], b.degrees()[k]);
	}
	return FuzzyRelation(a.source(), a.target(), std::move(out));
}

inline double dmax(double a, double b) { return std::max(a, b); }
inline double dmin(double a, double b) { return std::min(a, b); }

} // namespace detail

/// Reflexivity = min of the diagonal; symmetry = harsh inclusion of R^T in
/// R and of R in R^T; transitivity = harsh inclusion of R o R (max-min) in R.
[[nodiscard]] inline PropertyReport property_degrees(const FuzzyRelation& r, ConnectiveSystem system) {
	detail::require_square(r);
	PropertyReport rep;
	rep.reflexivity = 1.0;
	for (std::size_t i = 0; i < r.rows(); ++i) {
		rep.reflexivity = std::min(rep.reflexivity, r(i, i));
	}
	const FuzzyRelation rt = transpose(r);
	rep.symmetry = std::min(inclusion_degree(rt, r, Mode::harsh, system).value(),
	                        inclusion_degree(r, rt, Mode::harsh, system).value());
	rep.transitivity = inclusion_degree(compose(r, r, detail::max_min), r, Mode::harsh, system).value();
	return rep;
}

enum class ClosureKind { reflexive, symmetric, transitive, preorder };

/// Smallest relation containing R with the requested property.
[[nodiscard]] inline FuzzyRelation closure(const FuzzyRelation& r, ClosureKind kind) {
	detail::require_square(r);
	switch (kind) {
	case ClosureKind::reflexive: {
		FuzzyRelation out = r;
		for (std::size_t i = 0; i < r.rows(); ++i) {
			out.set(i, i, 1.0);
		}
		return out;
	}
	case ClosureKind::symmetric:
		return detail::cellwise(r, transpose(r), detail::dmax);
	case ClosureKind::transitive: {
		// Squaring doubles the covered path length each round.
		FuzzyRelation cur = r;
		for (std::size_t round = 0; round <= r.rows(); ++round) {
			FuzzyRelation next = detail::cellwise(cur, compose(cur, cur, detail::max_min), detail::dmax);
			if (next == cur) {
				return cur;
			}
			cur = std::move(next);
		}
		return cur;
	}
	case ClosureKind::preorder:
		return closure(closure(r, ClosureKind::reflexive), ClosureKind::transitive);
	}
	return r;
}

enum class InteriorKind { reflexive, symmetric, transitive };

/// Largest symmetric relation contained in R. Only the symmetric interior is
/// unique in general; the other kinds are rejected.
[[nodiscard]] inline FuzzyRelation interior(const FuzzyRelation& r, InteriorKind kind) {
	detail::require_square(r);
	if (kind != InteriorKind::symmetric) {
		throw ContractError("interior undefined for this kind");
	}
	return detail::cellwise(r, transpose(r), detail::dmin);
}

/// Outcome of a product-based criterion: the flag plus the relation it was
/// decided on.
struct CriterionResult {
	bool holds = false;
	FuzzyRelation witness;
};

/// R is a preorder iff R equals R super R^T (harsh).
[[nodiscard]] inline CriterionResult is_preorder(const FuzzyRelation& r, ConnectiveSystem system) {
	detail::require_square(r);
	FuzzyRelation w = compose(r, transpose(r), {ProductType::super, Mode::harsh, system.id()});
	const bool holds = approx_equal(w, r, criterion_tolerance);
	return {holds, std::move(w)};
}

/// R is an equivalence iff R equals R square R^T (harsh).
[[nodiscard]] inline CriterionResult is_equivalence(const FuzzyRelation& r, ConnectiveSystem system) {
	detail::require_square(r);
	FuzzyRelation w = compose(r, transpose(r), {ProductType::square, Mode::harsh, system.id()});
	const bool holds = approx_equal(w, r, criterion_tolerance);
	return {holds, std::move(w)};
}

struct CompatibilityResult {
	bool holds = false;          ///< criterion 1: F^T o R o G included in S
	double degree = 0.0;         ///< harsh inclusion degree of criterion 1
	bool explicit_holds = false; ///< criterion 2: F included in R sub (G sub S^T)
	double explicit_degree = 0.0;
};

/// Forward compatibility of (F, R, G; S) for F: A-C, R: A-B, G: B-D, S: C-D.
/// Both characterizations are evaluated. Circle products use the system's
/// paired t-norm, so the two agree for residuated systems and crisp input.
[[nodiscard]] inline CompatibilityResult forward_compatible(const FuzzyRelation& f, const FuzzyRelation& r,
                                                            const FuzzyRelation& g, const FuzzyRelation& s,
                                                            ConnectiveSystem system) {
	if (f.source() != r.source() || r.target() != g.source() || f.target() != s.source() ||
	    g.target() != s.target()) {
		throw ContractError("shape chain mismatch: expected F: A-C, R: A-B, G: B-D, S: C-D");
	}
	const ProductSpec circ{ProductType::circle, Mode::harsh, system.id(), Conjunction::residuum};
	const ProductSpec sub{ProductType::sub, Mode::harsh, system.id()};

	CompatibilityResult out;
	const FuzzyRelation image = compose(compose(transpose(f), r, circ), g, circ);
	out.degree = inclusion_degree(image, s, Mode::harsh, system).value();
	out.holds = out.degree >= 1.0 - criterion_tolerance;

	const FuzzyRelation bound = compose(r, compose(g, transpose(s), sub), sub);
	out.explicit_degree = inclusion_degree(f, bound, Mode::harsh, system).value();
	out.explicit_holds = out.explicit_degree >= 1.0 - criterion_tolerance;
	return out;
}

struct ContrapositiveResult {
	bool holds = false;
	/// (i, j) positions, in the positive relation's indexing, where pos(i, j)
	/// and neg(j, i) disagree after the cut.
	std::vector<std::pair<std::size_t, std::size_t>> violations;
};

/// Checks i -> j in `pos` iff j -> i in `neg` after cutting both at alpha.
[[nodiscard]] inline ContrapositiveResult contrapositive_check(const FuzzyRelation& pos, const FuzzyRelation& neg,
                                                               const AlphaPolicy& alpha = AlphaPolicy(0.5)) {
	detail::require_square(pos);
	detail::require_square(neg);
	if (pos.rows() != neg.rows()) {
		throw ContractError("positive and negated relations differ in size");
	}
	const FuzzyRelation p = alpha_cut(pos, alpha);
	const FuzzyRelation q = alpha_cut(neg, alpha);
	ContrapositiveResult out;
	for (std::size_t i = 0; i < p.rows(); ++i) {
		for (std::size_t j = 0; j < p.cols(); ++j) {
			if (p(i, j) != q(j, i)) {
				out.violations.emplace_back(i, j);
			}
		}
	}
	out.holds = out.violations.empty();
	return out;
}

} // namespace fuzzyrel
