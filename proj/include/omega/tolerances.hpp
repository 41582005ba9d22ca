#pragma once

namespace omega {

// Every acceptance threshold in one place; tests and the CLI read these.
struct Tolerances {
  double identity = 1e-12;       // addition law, product identity, tetration
  double round_trip = 1e-14;     // |W e^W - z| / max(1, |z|)
  double closed_form = 1e-12;    // closed forms substituted into their equation
  double certify = 1e-10;        // root certificates
  double cross_oracle = 1e-9;    // agreement between independent solution paths
  double epsilon_x = 1e-8;       // epsilon-x relation at a separation solution
};

inline constexpr Tolerances kTolerances{};

}  // namespace omega
