#pragma once

#include <iosfwd>
#include <string>

#include "em/evidence.hpp"

namespace em {

/// Text format for a body of evidence: the first significant line declares
/// `frame: label1,label2,...`, then one focal element per line as
/// `label1|label2 : mass`. Blank lines and `#` comments are skipped.
MassFunction parse_boe(std::istream& in, const std::string& source_name);
MassFunction parse_boe_file(const std::string& path);

void write_boe(std::ostream& out, const MassFunction& m);

}  // namespace em
