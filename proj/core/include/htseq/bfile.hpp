#pragma once

#include <string>

#include "htseq/recurrence.hpp"

namespace htseq {

// OEIS b-file: lines "index value", '#' comments ignored, arbitrary-precision
// integers, indices strictly increasing (not necessarily from 0).
InitialSegment read_bfile(const std::string& path);
InitialSegment parse_bfile_text(const std::string& text);

}  // namespace htseq
