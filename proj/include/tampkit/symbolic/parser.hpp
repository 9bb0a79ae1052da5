#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "tampkit/symbolic/types.hpp"

namespace tampkit::symbolic {

struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " at line " + std::to_string(line_) + ", column " +
                           std::to_string(col_)),
        line(line_),
        column(col_) {}
};

// Parses the STRIPS subset: :strips, :typing, :negative-preconditions.
// Lowercase identifiers, `;` comments. The grammar is documented in
// docs/pddl_subset.md and is checked strictly (undeclared symbols and
// arity mismatches are parse errors with positions).
DomainModel parse_domain(std::string_view text);

ProblemModel parse_problem(std::string_view text, const DomainModel& domain);

DomainModel parse_domain_file(const std::string& path);
ProblemModel parse_problem_file(const std::string& path, const DomainModel& domain);

}  // namespace tampkit::symbolic
