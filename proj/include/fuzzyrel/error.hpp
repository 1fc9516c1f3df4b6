#pragma once

#include <stdexcept>
#include <string>

namespace fuzzyrel {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// Malformed input document: bad CSV/JSON, out-of-range scale, unknown id.
class ParseError : public Error {
public:
	using Error::Error;
};

/// A call whose arguments violate an operation's precondition
/// (shape mismatch, alpha outside [0,1], non-square relation, ...).
class ContractError : public Error {
public:
	using Error::Error;
};

} // namespace fuzzyrel
