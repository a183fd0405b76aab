#ifndef PKFOLD_IO_HPP
#define PKFOLD_IO_HPP

#include <string>
#include <vector>

#include "pkfold/diagrams.hpp"

namespace pkfold {

/// Arc-list text format: header "n <length>", then one "i j" line per arc in
/// ascending i. Emitted byte-exactly: single spaces, LF endings, no trailing
/// whitespace.
std::string emit_arcs(const Structure& s);
Structure parse_arcs(const std::string& text, DiagramParams params = {});

/// Sequence input: plain sequence or '>'-headed record; whitespace ignored,
/// lowercase accepted, T mapped to U.
std::string parse_sequence(const std::string& text);
std::string read_sequence_file(const std::string& path);

/// Bracket string over the families (), [], {}: arcs taken by ascending i,
/// each assigned the first family none of whose members it crosses. Throws
/// BracketOverflow if three families do not suffice.
std::string bracket_string(const Structure& s);

} // namespace pkfold

#endif
