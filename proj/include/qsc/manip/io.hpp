#pragma once

#include <iosfwd>
#include <string>

#include "qsc/manip/scf.hpp"

namespace qsc {

// "SCF1", u32 LE k, u32 LE n, then (k!)^n outcome bytes in profile order
void write_scf1(std::ostream& os, SocialChoiceFunction& f);
SocialChoiceFunction read_scf1(std::istream& is);

void save_scf(const std::string& path, SocialChoiceFunction& f);
SocialChoiceFunction load_scf(const std::string& path);

} // namespace qsc
