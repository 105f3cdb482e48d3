#pragma once

#include "isoc/system.hpp"

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace isoc::cli {

// Exit codes: 0 affirmative, 1 valid but negative, 2 input error.
constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;

struct SystemDocument {
    PlanarSystem system;
    std::optional<std::vector<Poly>> family;  // a..h when given in family form
    std::map<Var, Rational> bindings;
};

// JSON text; unknown keys and mixed forms are rejected with std::invalid_argument.
SystemDocument parseSystemDocument(std::string_view json);

// "a,b,...,h": eight entries, each an expression in the grammar.
std::vector<Poly> parseFamilyList(std::string_view list);

// At most maxTerms terms, then " + ... (N more terms)".
std::string truncatedText(const Poly& p, std::size_t maxTerms = 20);

// args excludes the program name.
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace isoc::cli
