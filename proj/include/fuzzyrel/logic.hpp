#pragma once

/**
 * @file
 *
 * Truth values and the many-valued connective systems that parameterize
 * every relational product.
 *
 * A connective system bundles an implication, the equivalence built from it
 * (min of both directions), the standard negation 1 - a, and the t-norm used
 * when the system is paired with a circle product. Only the Lukasiewicz and
 * Goedel systems are residuated; for them the paired t-norm is the residuum
 * of the implication, for the others it is plain min.
 */

#include "fuzzyrel/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

namespace fuzzyrel {

/// A degree in the closed unit interval.
class TruthValue {
public:
	constexpr TruthValue() noexcept = default;

	explicit TruthValue(double value) : value_(value) {
		if (!(value >= 0.0 && value <= 1.0)) {
			throw ContractError("truth value " + std::to_string(value) + " outside [0,1]");
		}
	}

	[[nodiscard]] constexpr double value() const noexcept { return value_; }
	constexpr operator double() const noexcept { return value_; }

private:
	double value_ = 0.0;
};

/// Identifiers of the supported connective systems.
enum class System {
	L,     ///< Lukasiewicz
	KD,    ///< Kleene-Dienes
	KDL,   ///< Reichenbach
	S,     ///< Goedel (standard sequence)
	Sharp, ///< crisp-valued "sharp" implication, written S#
	G43,   ///< Gaines
	G43c   ///< contrapositive Gaines
};

inline constexpr std::array<System, 7> all_systems{System::L,     System::KD,  System::KDL, System::S,
                                                   System::Sharp, System::G43, System::G43c};

[[nodiscard]] constexpr std::string_view system_name(System s) noexcept {
	switch (s) {
	case System::L: return "L";
	case System::KD: return "KD";
	case System::KDL: return "KDL";
	case System::S: return "S";
	case System::Sharp: return "S#";
	case System::G43: return "G43";
	case System::G43c: return "G43c";
	}
	return "?";
}

[[nodiscard]] inline std::optional<System> parse_system(std::string_view name) noexcept {
	for (System s : all_systems) {
		if (system_name(s) == name) {
			return s;
		}
	}
	return std::nullopt;
}

[[nodiscard]] constexpr bool is_residuated(System s) noexcept {
	return s == System::L || s == System::S;
}

namespace detail {

constexpr double clamp_unit(double x) noexcept {
	return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x);
}

} // namespace detail

/// Raw-double kernels. Callers guarantee arguments already lie in [0,1].
[[nodiscard]] constexpr double implies(System s, double a, double b) noexcept {
	switch (s) {
	case System::L:
		// written as 1 - (a - b) so that the derived equivalence is exactly 1 - |a - b|
		return std::min(1.0, 1.0 - (a - b));
	case System::KD:
		return std::max(1.0 - a, b);
	case System::KDL:
		return detail::clamp_unit(1.0 - a + a * b);
	case System::S:
		return a <= b ? 1.0 : b;
	case System::Sharp:
		return a <= b ? 1.0 : 0.0;
	case System::G43:
		return a == 0.0 ? 1.0 : std::min(1.0, b / a);
	case System::G43c:
		return b == 1.0 ? 1.0 : std::min(1.0, (1.0 - a) / (1.0 - b));
	}
	return 0.0;
}

[[nodiscard]] constexpr double equiv(System s, double a, double b) noexcept {
	return std::min(implies(s, a, b), implies(s, b, a));
}

[[nodiscard]] constexpr double negate(double a) noexcept { return 1.0 - a; }

[[nodiscard]] constexpr double lukasiewicz_tnorm(double a, double b) noexcept {
	return std::max(0.0, a + b - 1.0);
}

/// t-norm used when a circle product is paired with `s`: the residuum for
/// L and S, min otherwise.
[[nodiscard]] constexpr double paired_tnorm(System s, double a, double b) noexcept {
	return s == System::L ? lukasiewicz_tnorm(a, b) : std::min(a, b);
}

/// Binary truth function handle returned by residuum_tnorm().
using TruthFunction = double (*)(double, double);

/// A named bundle of implication, equivalence, negation and paired t-norm.
class ConnectiveSystem {
public:
	constexpr ConnectiveSystem(System id) noexcept : id_(id) {} // NOLINT(implicit)

	[[nodiscard]] constexpr System id() const noexcept { return id_; }
	[[nodiscard]] constexpr std::string_view name() const noexcept { return system_name(id_); }

	[[nodiscard]] constexpr double implication(double a, double b) const noexcept { return implies(id_, a, b); }
	[[nodiscard]] constexpr double equivalence(double a, double b) const noexcept { return equiv(id_, a, b); }
	[[nodiscard]] constexpr double negation(double a) const noexcept { return negate(a); }
	[[nodiscard]] constexpr double tnorm(double a, double b) const noexcept { return paired_tnorm(id_, a, b); }

	friend constexpr bool operator==(ConnectiveSystem, ConnectiveSystem) noexcept = default;

private:
	System id_;
};

[[nodiscard]] inline ConnectiveSystem connective_system(std::string_view name) {
	if (auto s = parse_system(name)) {
		return *s;
	}
	throw ContractError("unknown connective system '" + std::string(name) + "'");
}

[[nodiscard]] inline TruthValue implication(ConnectiveSystem sys, TruthValue a, TruthValue b) {
	return TruthValue(sys.implication(a, b));
}

[[nodiscard]] inline TruthValue equivalence_deg(ConnectiveSystem sys, TruthValue a, TruthValue b) {
	return TruthValue(sys.equivalence(a, b));
}

[[nodiscard]] inline TruthValue negation(ConnectiveSystem sys, TruthValue a) {
	return TruthValue(sys.negation(a));
}

/// The t-norm whose residuum is the system's implication.
/// Throws ContractError("no residuated pairing") for non-residuated systems.
[[nodiscard]] inline TruthFunction residuum_tnorm(ConnectiveSystem sys) {
	switch (sys.id()) {
	case System::L:
		return [](double a, double b) { return lukasiewicz_tnorm(a, b); };
	case System::S:
		return [](double a, double b) { return std::min(a, b); };
	default:
		throw ContractError("no residuated pairing for system " + std::string(sys.name()));
	}
}

} // namespace fuzzyrel
