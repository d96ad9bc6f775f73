#pragma once

namespace vkslice::detail {

// Local picture of an r3 triangle. Strand T carries the tails of alpha and
// beta, strand M the head of alpha and the tail of gamma, strand B the heads
// of beta and gamma. Each flag says the first-named endpoint comes first
// along the strand.
struct R3Configuration {
  bool top_alpha_first;
  bool middle_alpha_first;
  bool bottom_beta_first;
  int sign_alpha;
  int sign_beta;
  int sign_gamma;
};

// True when the configuration is realized by three straight lines in the
// plane; the r3 move then reverses all three strand orders.
bool r3_realizable(const R3Configuration& cfg);

}  // namespace vkslice::detail
