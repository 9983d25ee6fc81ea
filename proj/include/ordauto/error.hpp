#ifndef ORDAUTO_ERROR_HPP
#define ORDAUTO_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ordauto {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input: trees, automata, ordinals, formulas, bundles.
class FormatError : public Error {
public:
    using Error::Error;
};

/// A configured state or iteration budget was exhausted.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// Operands over different alphabets, or a tree using symbols outside an alphabet.
class AlphabetMismatch : public Error {
public:
    using Error::Error;
};

/// A value outside the range an operation accepts (ordinal too large, bad position, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

}  // namespace ordauto

#endif
