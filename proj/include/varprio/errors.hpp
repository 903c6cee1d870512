#pragma once

// Error taxonomy for the varprio toolkit. Every failure the library can
// produce maps to one of these types; the CLI maps them to exit codes.

#include <stdexcept>
#include <string>

namespace varprio {

// Malformed source code, directives, formulas, or data files.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Formula or option set exceeds the enumeration bounds of the engine.
class TooManyAtoms : public std::runtime_error {
public:
    explicit TooManyAtoms(const std::string& msg) : std::runtime_error(msg) {}
};

class TooManyOptions : public std::runtime_error {
public:
    explicit TooManyOptions(const std::string& msg) : std::runtime_error(msg) {}
};

// A sampling or prioritization step needed valid configurations and none exist.
class EmptySpace : public std::runtime_error {
public:
    explicit EmptySpace(const std::string& msg) : std::runtime_error(msg) {}
};

// Two inputs disagree about the option universe (e.g. a selections file
// mentions options absent from the configuration table).
class OptionMismatch : public std::runtime_error {
public:
    explicit OptionMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

// Evaluation was requested with an empty bug list.
class NoBugs : public std::runtime_error {
public:
    explicit NoBugs(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace varprio
