// Copyright 2026 The hybridrelay Authors
// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo engine: realize both relay fields, run a selection protocol and
// count end-to-end successes.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hybridrelay/coverage.hpp"
#include "hybridrelay/pointprocess.hpp"
#include "hybridrelay/scenario.hpp"

namespace hybridrelay::simulation {

using channel::Band;
using pointprocess::RelayRealization;
using pointprocess::Rng;

enum class ProtocolKind { HRS, OptimalMaxMin, RfOnly, ThzOnly, DirectRF, DirectTHz };

inline constexpr ProtocolKind kAllProtocols[] = {
    ProtocolKind::HRS,     ProtocolKind::OptimalMaxMin, ProtocolKind::RfOnly,
    ProtocolKind::ThzOnly, ProtocolKind::DirectRF,      ProtocolKind::DirectTHz};

std::string_view protocol_name(ProtocolKind kind);
/// Inverse of protocol_name; throws ConfigError for unknown names.
ProtocolKind parse_protocol(std::string_view name);

/// One network draw: all relays of both bands with their per-hop fading, plus
/// the fading of the two direct source -> destination links.
struct NetworkRealization {
  std::vector<RelayRealization> relays;
  double direct_fade_rf = 1.0;
  double direct_fade_thz = 1.0;
};

/// Draws the RF field, then the THz field, then the direct-link fading, all
/// from `rng` in that fixed order.
void realize_network(const Scenario& scenario, Rng& rng, NetworkRealization& out);
NetworkRealization realize_network(const Scenario& scenario, Rng& rng);

/// Instantaneous SNR of the source -> relay and relay -> destination hops.
double source_snr(const Scenario& scenario, const RelayRealization& relay);
double destination_snr(const Scenario& scenario, const RelayRealization& relay);

/// Relays of `band` whose instantaneous source-hop SNR clears the band's
/// relayed threshold.
std::vector<RelayRealization> qualified_set(const Scenario& scenario,
                                            std::span<const RelayRealization> relays, Band band);

/// Nearest-to-destination qualified relay of one band.
std::optional<RelayRealization> nearest_qualified(const Scenario& scenario,
                                                  std::span<const RelayRealization> relays,
                                                  Band band);

/// Hybrid selection: each band's nearest qualified relay is a finalist; the one
/// with the larger average rate (unit fading) wins, THz on exact ties.
std::optional<RelayRealization> hrs_select(const Scenario& scenario,
                                           std::span<const RelayRealization> relays);

/// Whether `protocol` meets the target rate on this realization.
bool protocol_succeeds(const Scenario& scenario, ProtocolKind protocol,
                       const NetworkRealization& network);

/// One realization followed by one protocol run.
bool trial_coverage(const Scenario& scenario, ProtocolKind protocol, Rng& rng);

/// Mean of trial_coverage over `trials` realizations; trial k draws from
/// substream k of master_seed, so the result does not depend on `workers`
/// (0 picks the hardware concurrency).
CoverageEstimate monte_carlo_coverage(const Scenario& scenario, ProtocolKind protocol,
                                      std::int64_t trials, std::uint64_t master_seed,
                                      unsigned workers = 0);

/// Several protocols evaluated on the same realizations. only[i][j] counts
/// trials in which protocol i succeeded and protocol j failed.
struct PairedCoverage {
  std::vector<ProtocolKind> protocols;
  std::int64_t trials = 0;
  std::vector<std::int64_t> successes;
  std::vector<std::vector<std::int64_t>> only;

  CoverageEstimate estimate(std::size_t i) const;
};

PairedCoverage paired_coverage(const Scenario& scenario, std::span<const ProtocolKind> protocols,
                               std::int64_t trials, std::uint64_t master_seed,
                               unsigned workers = 0);

}  // namespace hybridrelay::simulation
