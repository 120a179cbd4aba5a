#ifndef RRA_PARSE_HPP_
#define RRA_PARSE_HPP_

#include <string>

#include "rra/constraints.hpp"

namespace rra {

// Text grammar shared by query files and the CLI:
//   term       := "cur" | "suc(" term ")" | "pred(" term ")"
//               | "suc_{" labels "}(" term ")" | "pred_{" labels "}(" term ")"
//   labels     := label ("," label)* ; a label may carry "^-"
//   constraint := disj ; disj := conj ("||" conj)*
//   conj       := atom ("&&" atom)*
//   atom       := term "==" term | term "!=" term | "true" | "(" constraint ")"

PositionTerm parse_term(const std::string& text);
RigidConstraint parse_constraint(const std::string& text);

} // namespace rra

#endif
