#pragma once

/**
 * @file
 *
 * Labeled fuzzy relations and the four Bandler-Kohout products.
 *
 * For R from X to Y and S from Y to Z, with n = |Y|:
 *
 *   circle  (R o S)_ik = OR_j  (R_ij AND S_jk)
 *   sub     (R < S)_ik = AND_j (R_ij -> S_jk)
 *   super   (R > S)_ik = AND_j (R_ij <- S_jk)
 *   square  (R # S)_ik = AND_j (R_ij == S_jk)
 *
 * Harsh products aggregate over j with max (circle) or min (the others).
 * Mean products replace that outer aggregator with (1/n) * sum_j, keeping
 * the inner connective.
 */

#include "fuzzyrel/error.hpp"
#include "fuzzyrel/format.hpp"
#include "fuzzyrel/logic.hpp"
#include "fuzzyrel/parallel.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace fuzzyrel {

/// Ordered, non-empty sequence of unique labels.
class LabeledSet {
public:
	LabeledSet() = default;

	explicit LabeledSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
		if (labels_.empty()) {
			throw ContractError("labeled set must not be empty");
		}
		index_.reserve(labels_.size());
		for (std::size_t i = 0; i < labels_.size(); ++i) {
			if (!index_.emplace(labels_[i], i).second) {
				throw ContractError("duplicate label '" + labels_[i] + "'");
			}
		}
	}

	LabeledSet(std::initializer_list<std::string> labels) : LabeledSet(std::vector<std::string>(labels)) {}

	/// Labels "<prefix>1" ... "<prefix>n".
	[[nodiscard]] static LabeledSet numbered(std::string_view prefix, std::size_t n) {
		std::vector<std::string> labels;
		labels.reserve(n);
		for (std::size_t i = 1; i <= n; ++i) {
			labels.push_back(std::string(prefix) + std::to_string(i));
		}
		return LabeledSet(std::move(labels));
	}

	[[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
	[[nodiscard]] bool empty() const noexcept { return labels_.empty(); }
	[[nodiscard]] const std::string& operator[](std::size_t i) const { return labels_.at(i); }
	[[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
	[[nodiscard]] auto begin() const noexcept { return labels_.begin(); }
	[[nodiscard]] auto end() const noexcept { return labels_.end(); }

	[[nodiscard]] std::optional<std::size_t> find(std::string_view label) const {
		auto it = index_.find(std::string(label));
		if (it == index_.end()) {
			return std::nullopt;
		}
		return it->second;
	}

	[[nodiscard]] bool contains(std::string_view label) const { return find(label).has_value(); }

	friend bool operator==(const LabeledSet& a, const LabeledSet& b) { return a.labels_ == b.labels_; }

private:
	std::vector<std::string> labels_;
	std::unordered_map<std::string, std::size_t> index_;
};

/// Matrix of degrees between two labeled sets; entry (i, j) is the degree of
/// source_i R target_j. Immutable once built except through the explicit
/// cell setter used by constructors of derived relations.
class FuzzyRelation {
public:
	FuzzyRelation() = default;

	/// All-zero relation.
	FuzzyRelation(LabeledSet source, LabeledSet target)
	    : source_(std::move(source)), target_(std::move(target)), degrees_(source_.size() * target_.size(), 0.0) {}

	FuzzyRelation(LabeledSet source, LabeledSet target, std::vector<double> degrees)
	    : source_(std::move(source)), target_(std::move(target)), degrees_(std::move(degrees)) {
		if (degrees_.size() != source_.size() * target_.size()) {
			throw ContractError("relation has " + std::to_string(degrees_.size()) + " degrees, expected " +
			                    std::to_string(source_.size() * target_.size()));
		}
		for (double d : degrees_) {
			if (!(d >= 0.0 && d <= 1.0)) {
				throw ContractError("relation degree " + std::to_string(d) + " outside [0,1]");
			}
		}
	}

	/// Builds from nested rows with generated labels x1..xm / y1..yn.
	[[nodiscard]] static FuzzyRelation from_rows(const std::vector<std::vector<double>>& rows,
	                                             std::string_view row_prefix = "x",
	                                             std::string_view col_prefix = "y") {
		if (rows.empty() || rows.front().empty()) {
			throw ContractError("relation must have at least one row and one column");
		}
		std::vector<double> flat;
		for (const auto& r : rows) {
			if (r.size() != rows.front().size()) {
				throw ContractError("ragged relation rows");
			}
			flat.insert(flat.end(), r.begin(), r.end());
		}
		return FuzzyRelation(LabeledSet::numbered(row_prefix, rows.size()),
		                     LabeledSet::numbered(col_prefix, rows.front().size()), std::move(flat));
	}

	/// Square relation over one label set.
	[[nodiscard]] static FuzzyRelation square_from_rows(const std::vector<std::vector<double>>& rows,
	                                                    std::string_view prefix = "x") {
		return from_rows(rows, prefix, prefix);
	}

	[[nodiscard]] static FuzzyRelation identity(const LabeledSet& carrier) {
		FuzzyRelation r(carrier, carrier);
		for (std::size_t i = 0; i < carrier.size(); ++i) {
			r.set(i, i, 1.0);
		}
		return r;
	}

	[[nodiscard]] const LabeledSet& source() const noexcept { return source_; }
	[[nodiscard]] const LabeledSet& target() const noexcept { return target_; }
	[[nodiscard]] std::size_t rows() const noexcept { return source_.size(); }
	[[nodiscard]] std::size_t cols() const noexcept { return target_.size(); }
	[[nodiscard]] bool is_square() const noexcept { return source_ == target_; }

	[[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept { return degrees_[i * cols() + j]; }
	[[nodiscard]] double at(std::size_t i, std::size_t j) const {
		if (i >= rows() || j >= cols()) {
			throw ContractError("relation index out of range");
		}
		return (*this)(i, j);
	}

	void set(std::size_t i, std::size_t j, double d) {
		if (!(d >= 0.0 && d <= 1.0)) {
			throw ContractError("relation degree " + std::to_string(d) + " outside [0,1]");
		}
		degrees_.at(i * cols() + j) = d;
	}

	[[nodiscard]] std::span<const double> row(std::size_t i) const { return {degrees_.data() + i * cols(), cols()}; }
	[[nodiscard]] std::span<const double> degrees() const noexcept { return degrees_; }

	[[nodiscard]] bool is_crisp() const noexcept {
		return std::all_of(degrees_.begin(), degrees_.end(), [](double d) { return d == 0.0 || d == 1.0; });
	}

	[[nodiscard]] double mean_degree() const noexcept {
		return std::accumulate(degrees_.begin(), degrees_.end(), 0.0) / static_cast<double>(degrees_.size());
	}

	friend bool operator==(const FuzzyRelation&, const FuzzyRelation&) = default;

private:
	LabeledSet source_;
	LabeledSet target_;
	std::vector<double> degrees_;
};

/// Largest absolute cellwise difference; relations must share labels.
[[nodiscard]] inline double max_abs_difference(const FuzzyRelation& a, const FuzzyRelation& b) {
	if (a.source() != b.source() || a.target() != b.target()) {
		throw ContractError("relations differ in shape or labels");
	}
	double worst = 0.0;
	for (std::size_t k = 0; k < a.degrees().size(); ++k) {
		worst = std::max(worst, std::abs(a.degrees()[k] - b.degrees()[k]));
	}
	return worst;
}

[[nodiscard]] inline bool approx_equal(const FuzzyRelation& a, const FuzzyRelation& b, double tol = 1e-12) {
	return max_abs_difference(a, b) <= tol;
}

/// Three-axis array of degrees, row-major over (axis0, axis1, axis2).
class TernaryRelation {
public:
	TernaryRelation() = default;

	TernaryRelation(std::array<LabeledSet, 3> axes, std::vector<double> degrees)
	    : axes_(std::move(axes)), degrees_(std::move(degrees)) {
		if (degrees_.size() != axes_[0].size() * axes_[1].size() * axes_[2].size()) {
			throw ContractError("ternary relation shape does not match its axes");
		}
		for (double d : degrees_) {
			if (!(d >= 0.0 && d <= 1.0)) {
				throw ContractError("ternary degree " + std::to_string(d) + " outside [0,1]");
			}
		}
	}

	[[nodiscard]] const LabeledSet& axis(std::size_t a) const { return axes_.at(a); }
	[[nodiscard]] std::size_t extent(std::size_t a) const { return axes_.at(a).size(); }

	[[nodiscard]] double operator()(std::size_t i, std::size_t j, std::size_t k) const noexcept {
		return degrees_[(i * axes_[1].size() + j) * axes_[2].size() + k];
	}

private:
	std::array<LabeledSet, 3> axes_;
	std::vector<double> degrees_;
};

/// Dense four-axis result of a ternary square product.
class Tensor4 {
public:
	Tensor4(std::array<LabeledSet, 4> axes) : axes_(std::move(axes)) {
		degrees_.assign(axes_[0].size() * axes_[1].size() * axes_[2].size() * axes_[3].size(), 0.0);
	}

	[[nodiscard]] const LabeledSet& axis(std::size_t a) const { return axes_.at(a); }
	[[nodiscard]] std::size_t extent(std::size_t a) const { return axes_.at(a).size(); }
	[[nodiscard]] std::span<const double> degrees() const noexcept { return degrees_; }

	[[nodiscard]] std::size_t offset(std::size_t i, std::size_t j, std::size_t l, std::size_t m) const noexcept {
		return ((i * axes_[1].size() + j) * axes_[2].size() + l) * axes_[3].size() + m;
	}
	[[nodiscard]] double operator()(std::size_t i, std::size_t j, std::size_t l, std::size_t m) const noexcept {
		return degrees_[offset(i, j, l, m)];
	}
	double& cell(std::size_t i, std::size_t j, std::size_t l, std::size_t m) noexcept {
		return degrees_[offset(i, j, l, m)];
	}

private:
	std::array<LabeledSet, 4> axes_;
	std::vector<double> degrees_;
};

enum class ProductType { circle, sub, super, square };
enum class Mode { harsh, mean };

/// Inner conjunction of circle products.
enum class Conjunction {
	min,     ///< Goedel t-norm, the default for every system
	residuum ///< the system's paired t-norm (Lukasiewicz t-norm for L)
};

struct ProductSpec {
	ProductType type = ProductType::circle;
	Mode mode = Mode::harsh;
	System system = System::L;
	Conjunction conjunction = Conjunction::min;
};

[[nodiscard]] constexpr std::string_view product_name(ProductType t) noexcept {
	switch (t) {
	case ProductType::circle: return "circle";
	case ProductType::sub: return "sub";
	case ProductType::super: return "super";
	case ProductType::square: return "square";
	}
	return "?";
}

[[nodiscard]] constexpr std::string_view mode_name(Mode m) noexcept {
	return m == Mode::harsh ? "harsh" : "mean";
}

[[nodiscard]] inline std::optional<Mode> parse_mode(std::string_view s) noexcept {
	if (s == "harsh") return Mode::harsh;
	if (s == "mean") return Mode::mean;
	return std::nullopt;
}

[[nodiscard]] inline FuzzyRelation transpose(const FuzzyRelation& r) {
	std::vector<double> out(r.rows() * r.cols());
	for (std::size_t i = 0; i < r.rows(); ++i) {
		for (std::size_t j = 0; j < r.cols(); ++j) {
			out[j * r.rows() + i] = r(i, j);
		}
	}
	return FuzzyRelation(r.target(), r.source(), std::move(out));
}

namespace detail {

inline double inner_connective(const ProductSpec& spec, double r, double s) noexcept {
	switch (spec.type) {
	case ProductType::circle:
		return spec.conjunction == Conjunction::residuum ? paired_tnorm(spec.system, r, s) : std::min(r, s);
	case ProductType::sub: return implies(spec.system, r, s);
	case ProductType::super: return implies(spec.system, s, r);
	case ProductType::square: return equiv(spec.system, r, s);
	}
	return 0.0;
}

} // namespace detail

/// BK product of R (X to Y) and S (Y to Z). `threads` > 1 splits output rows
/// across worker threads; the result does not depend on it.
[[nodiscard]] inline FuzzyRelation compose(const FuzzyRelation& r, const FuzzyRelation& s, const ProductSpec& spec,
                                           unsigned threads = 1) {
	if (r.target() != s.source()) {
		throw ContractError("incompatible middle set");
	}
	const std::size_t m = r.rows();
	const std::size_t n = r.cols();
	const std::size_t p = s.cols();
	const bool disjunctive = spec.type == ProductType::circle;
	std::vector<double> out(m * p);
	parallel_for(m, threads, [&](std::size_t i) {
		for (std::size_t k = 0; k < p; ++k) {
			double acc = spec.mode == Mode::mean ? 0.0 : (disjunctive ? 0.0 : 1.0);
			for (std::size_t j = 0; j < n; ++j) {
				const double v = detail::inner_connective(spec, r(i, j), s(j, k));
				if (spec.mode == Mode::mean) {
					acc += v;
				} else {
					acc = disjunctive ? std::max(acc, v) : std::min(acc, v);
				}
			}
			if (spec.mode == Mode::mean) {
				acc = detail::clamp_unit(acc / static_cast<double>(n));
			}
			out[i * p + k] = acc;
		}
	});
	return FuzzyRelation(r.source(), s.target(), std::move(out));
}

/// Degree to which R is included in S cellwise (R's cells imply S's cells).
[[nodiscard]] inline TruthValue inclusion_degree(const FuzzyRelation& r, const FuzzyRelation& s, Mode mode,
                                                 ConnectiveSystem system) {
	if (r.source() != s.source() || r.target() != s.target()) {
		throw ContractError("inclusion requires identical shapes and labels");
	}
	const auto a = r.degrees();
	const auto b = s.degrees();
	double acc = mode == Mode::harsh ? 1.0 : 0.0;
	for (std::size_t k = 0; k < a.size(); ++k) {
		const double v = system.implication(a[k], b[k]);
		acc = mode == Mode::harsh ? std::min(acc, v) : acc + v;
	}
	if (mode == Mode::mean) {
		acc = detail::clamp_unit(acc / static_cast<double>(a.size()));
	}
	return TruthValue(acc);
}

/// Threshold for alpha_cut: a fixed level, or the mean of the relation's entries.
class AlphaPolicy {
public:
	struct MeanTag {};

	AlphaPolicy() : policy_(MeanTag{}) {}
	AlphaPolicy(double alpha) : policy_(alpha) { // NOLINT(implicit)
		if (!(alpha >= 0.0 && alpha <= 1.0)) {
			throw ContractError("alpha out of range");
		}
	}

	[[nodiscard]] static AlphaPolicy mean() { return AlphaPolicy(); }

	/// "mean" or a decimal in [0,1].
	[[nodiscard]] static AlphaPolicy parse(std::string_view text) {
		if (text == "mean" || text == "M") {
			return mean();
		}
		double v = 0.0;
		auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
		if (ec != std::errc{} || ptr != text.data() + text.size()) {
			throw ContractError("alpha must be a number or 'mean', got '" + std::string(text) + "'");
		}
		return AlphaPolicy(v);
	}

	[[nodiscard]] bool is_mean() const noexcept { return std::holds_alternative<MeanTag>(policy_); }
	[[nodiscard]] std::optional<double> fixed() const noexcept {
		if (auto* a = std::get_if<double>(&policy_)) {
			return *a;
		}
		return std::nullopt;
	}

	[[nodiscard]] double resolve(const FuzzyRelation& r) const {
		return is_mean() ? r.mean_degree() : *fixed();
	}

	[[nodiscard]] std::string to_string() const { return is_mean() ? "mean" : format_number(*fixed()); }

private:
	std::variant<MeanTag, double> policy_;
};

/// Crisp relation keeping cells with degree >= alpha.
[[nodiscard]] inline FuzzyRelation alpha_cut_at(const FuzzyRelation& r, double alpha) {
	if (!(alpha >= 0.0 && alpha <= 1.0)) {
		throw ContractError("alpha out of range");
	}
	std::vector<double> out(r.degrees().size());
	std::transform(r.degrees().begin(), r.degrees().end(), out.begin(),
	               [alpha](double d) { return d >= alpha ? 1.0 : 0.0; });
	return FuzzyRelation(r.source(), r.target(), std::move(out));
}

[[nodiscard]] inline FuzzyRelation alpha_cut(const FuzzyRelation& r, const AlphaPolicy& policy) {
	return alpha_cut_at(r, policy.resolve(r));
}

/// Square product of two ternary relations over one shared axis.
///
/// out[a][b][c][d] = AGG_k equiv(T[..k..], U[..k..]) where (a, b) are the
/// free axes of T and (c, d) the free axes of U, each in their original
/// order. `paired_axis` is 0-based: 2 pairs the last axes (the PYC form),
/// 1 pairs the middle axes (the VYC form).
[[nodiscard]] inline Tensor4 ternary_square(const TernaryRelation& t, const TernaryRelation& u, std::size_t paired_axis,
                                            Mode mode, ConnectiveSystem system) {
	if (paired_axis > 2) {
		throw ContractError("paired axis must be 0, 1 or 2");
	}
	if (t.axis(paired_axis) != u.axis(paired_axis)) {
		throw ContractError("paired-axis label mismatch");
	}
	std::array<std::size_t, 2> free{};
	for (std::size_t a = 0, f = 0; a < 3; ++a) {
		if (a != paired_axis) {
			free[f++] = a;
		}
	}
	Tensor4 out({t.axis(free[0]), t.axis(free[1]), u.axis(free[0]), u.axis(free[1])});
	const std::size_t n = t.extent(paired_axis);

	auto at = [paired_axis, &free](const TernaryRelation& rel, std::size_t x, std::size_t y, std::size_t k) {
		std::array<std::size_t, 3> idx{};
		idx[free[0]] = x;
		idx[free[1]] = y;
		idx[paired_axis] = k;
		return rel(idx[0], idx[1], idx[2]);
	};

	for (std::size_t i = 0; i < out.extent(0); ++i) {
		for (std::size_t j = 0; j < out.extent(1); ++j) {
			for (std::size_t l = 0; l < out.extent(2); ++l) {
				for (std::size_t m = 0; m < out.extent(3); ++m) {
					double acc = mode == Mode::harsh ? 1.0 : 0.0;
					for (std::size_t k = 0; k < n; ++k) {
						const double v = system.equivalence(at(t, i, j, k), at(u, l, m, k));
						acc = mode == Mode::harsh ? std::min(acc, v) : acc + v;
					}
					if (mode == Mode::mean) {
						acc = detail::clamp_unit(acc / static_cast<double>(n));
					}
					out.cell(i, j, l, m) = acc;
				}
			}
		}
	}
	return out;
}

} // namespace fuzzyrel
