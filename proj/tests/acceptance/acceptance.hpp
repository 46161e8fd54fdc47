#pragma once

// Acceptance battery: each criterion is an independent check returning a
// pass flag plus a one-line detail string for the summary output.

#include <string>

namespace acceptance {

struct Result {
  bool pass = false;
  std::string detail;
};

Result criterion_monotone();      // 1
Result criterion_block_oracle();  // 2
Result criterion_contraction();   // 3
Result criterion_lipschitz();     // 4
Result criterion_uniqueness();    // 5
Result criterion_bio();           // 6
Result criterion_stacked();       // 7
Result criterion_scaling();       // 8
Result criterion_adversarial();   // 9
Result criterion_espa();          // 10
Result criterion_serialize();     // 11

}  // namespace acceptance
