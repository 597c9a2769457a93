#ifndef AFFA_AUTOMATON_IO_HPP
#define AFFA_AUTOMATON_IO_HPP

#include <iosfwd>
#include <string>
#include <variant>

#include "affa/automata.hpp"

namespace affa {

using Machine = std::variant<Pfa, Afa>;

// Text format:
//
//   afa v1            # or: pfa v1
//   states 2
//   alphabet a b
//   initial 2/1 -1/1
//   final 1 0         # AfA: diagonal of F; PFA: accepting vector y
//   matrix a
//   1/1 -1/1
//   0/1 2/1
//   matrix b
//   ...
//
// Rows top-to-bottom, entries left-to-right; column j is the image of basis
// state j. '#' starts a comment. All type invariants are checked during the
// parse; the first violation is reported as a ParseError with its line.
Machine parse_automaton(std::istream& in);
Machine parse_automaton_file(const std::string& path);

std::string serialize(const Pfa& p);
std::string serialize(const Afa& a);
std::string serialize(const Machine& m);

}  // namespace affa

#endif
