#pragma once

#include <string>
#include <vector>

namespace btdiv {

// One source segment with its k candidate translations.  The shared unit
// of work for diversity scoring, decoding output and corpus sampling.
struct CandidateGroup {
  std::string id;
  std::string source;  // may be empty for unconditioned generation
  std::vector<std::string> candidates;
};

}  // namespace btdiv
