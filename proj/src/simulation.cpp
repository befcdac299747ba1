// Copyright 2026 The hybridrelay Authors
// SPDX-License-Identifier: Apache-2.0
#include "hybridrelay/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "hybridrelay/errors.hpp"

namespace hybridrelay::simulation {

namespace {

void append_field(const Scenario& scenario, Band band, Rng& rng,
                  std::vector<RelayRealization>& out) {
  const auto& params = scenario.band(band);
  const auto& g = scenario.geometry;
  for (const auto& p : pointprocess::sample_ppp(g.density(band), g.r_c_m, rng)) {
    RelayRealization relay{};
    relay.band = band;
    relay.rho = p.rho;
    relay.theta = p.theta;
    relay.dist_to_s = pointprocess::distance_to_source(p.rho, p.theta, g.r_sd_m);
    relay.fade_s = channel::sample_fading(params, rng);
    relay.fade_d = channel::sample_fading(params, rng);
    out.push_back(relay);
  }
}

// Infinite mean SNR (zero distance) counts as covered whatever the fading.
double instantaneous(double mean, double fade) { return std::isinf(mean) ? mean : mean * fade; }

bool relay_meets(const Scenario& s, const RelayRealization& relay) {
  return destination_snr(s, relay) >= s.threshold(relay.band);
}

bool direct_meets(const Scenario& s, Band band, double fade) {
  const double snr = instantaneous(channel::mean_snr(s.band(band), s.geometry.r_sd_m), fade);
  return snr >= s.direct_threshold(band);
}

unsigned resolve_workers(unsigned workers, std::int64_t trials) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::clamp<std::int64_t>(workers, 1, std::max<std::int64_t>(trials, 1)));
}

}  // namespace

std::string_view protocol_name(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::HRS: return "hrs";
    case ProtocolKind::OptimalMaxMin: return "optimal";
    case ProtocolKind::RfOnly: return "rf_only";
    case ProtocolKind::ThzOnly: return "thz_only";
    case ProtocolKind::DirectRF: return "direct_rf";
    case ProtocolKind::DirectTHz: return "direct_thz";
  }
  return "unknown";
}

ProtocolKind parse_protocol(std::string_view name) {
  for (auto kind : kAllProtocols) {
    if (protocol_name(kind) == name) return kind;
  }
  throw ConfigError("unknown protocol '" + std::string(name) + "'");
}

void realize_network(const Scenario& scenario, Rng& rng, NetworkRealization& out) {
  out.relays.clear();
  append_field(scenario, Band::RF, rng, out.relays);
  append_field(scenario, Band::THz, rng, out.relays);
  out.direct_fade_rf = channel::sample_fading(scenario.rf, rng);
  out.direct_fade_thz = channel::sample_fading(scenario.thz, rng);
}

NetworkRealization realize_network(const Scenario& scenario, Rng& rng) {
  NetworkRealization out;
  realize_network(scenario, rng, out);
  return out;
}

double source_snr(const Scenario& scenario, const RelayRealization& relay) {
  return instantaneous(channel::mean_snr(scenario.band(relay.band), relay.dist_to_s),
                       relay.fade_s);
}

double destination_snr(const Scenario& scenario, const RelayRealization& relay) {
  return instantaneous(channel::mean_snr(scenario.band(relay.band), relay.rho), relay.fade_d);
}

std::vector<RelayRealization> qualified_set(const Scenario& scenario,
                                            std::span<const RelayRealization> relays, Band band) {
  std::vector<RelayRealization> out;
  const double tau = scenario.threshold(band);
  for (const auto& relay : relays) {
    if (relay.band == band && source_snr(scenario, relay) >= tau) out.push_back(relay);
  }
  return out;
}

std::optional<RelayRealization> nearest_qualified(const Scenario& scenario,
                                                  std::span<const RelayRealization> relays,
                                                  Band band) {
  const double tau = scenario.threshold(band);
  const RelayRealization* best = nullptr;
  for (const auto& relay : relays) {
    if (relay.band != band) continue;
    if (best != nullptr && relay.rho >= best->rho) continue;
    if (source_snr(scenario, relay) >= tau) best = &relay;
  }
  if (best == nullptr) return std::nullopt;
  return *best;
}

std::optional<RelayRealization> hrs_select(const Scenario& scenario,
                                           std::span<const RelayRealization> relays) {
  auto rf = nearest_qualified(scenario, relays, Band::RF);
  auto thz = nearest_qualified(scenario, relays, Band::THz);
  if (!rf) return thz;
  if (!thz) return rf;
  const double rf_rate = channel::threshold_to_rate(channel::mean_snr(scenario.rf, rf->rho),
                                                    scenario.rf.bandwidth_hz, 2);
  const double thz_rate = channel::threshold_to_rate(channel::mean_snr(scenario.thz, thz->rho),
                                                     scenario.thz.bandwidth_hz, 2);
  return rf_rate > thz_rate ? rf : thz;
}

bool protocol_succeeds(const Scenario& scenario, ProtocolKind protocol,
                       const NetworkRealization& network) {
  switch (protocol) {
    case ProtocolKind::HRS: {
      const auto chosen = hrs_select(scenario, network.relays);
      return chosen && relay_meets(scenario, *chosen);
    }
    case ProtocolKind::RfOnly:
    case ProtocolKind::ThzOnly: {
      const Band band = protocol == ProtocolKind::RfOnly ? Band::RF : Band::THz;
      const auto chosen = nearest_qualified(scenario, network.relays, band);
      return chosen && relay_meets(scenario, *chosen);
    }
    case ProtocolKind::OptimalMaxMin:
      // max over relays of (B/2) log2(1 + min(SNR_S, SNR_D)) >= rate holds iff
      // some relay has both hops at or above its band's relayed threshold.
      return std::any_of(network.relays.begin(), network.relays.end(), [&](const auto& relay) {
        const double weakest = std::min(source_snr(scenario, relay), destination_snr(scenario, relay));
        return weakest >= scenario.threshold(relay.band);
      });
    case ProtocolKind::DirectRF:
      return direct_meets(scenario, Band::RF, network.direct_fade_rf);
    case ProtocolKind::DirectTHz:
      return direct_meets(scenario, Band::THz, network.direct_fade_thz);
  }
  return false;
}

bool trial_coverage(const Scenario& scenario, ProtocolKind protocol, Rng& rng) {
  return protocol_succeeds(scenario, protocol, realize_network(scenario, rng));
}

CoverageEstimate PairedCoverage::estimate(std::size_t i) const {
  return monte_carlo_estimate(successes.at(i), trials);
}

PairedCoverage paired_coverage(const Scenario& scenario, std::span<const ProtocolKind> protocols,
                               std::int64_t trials, std::uint64_t master_seed,
                               unsigned workers) {
  if (trials < 1) throw DomainError("monte carlo: trials must be >= 1");
  if (protocols.empty()) throw DomainError("monte carlo: no protocol requested");
  scenario.validate();

  const std::size_t n = protocols.size();
  struct Tally {
    std::vector<std::int64_t> successes;
    std::vector<std::vector<std::int64_t>> only;
  };
  const unsigned pool = resolve_workers(workers, trials);
  std::vector<Tally> tallies(pool, Tally{std::vector<std::int64_t>(n, 0),
                                         std::vector<std::vector<std::int64_t>>(
                                             n, std::vector<std::int64_t>(n, 0))});

  auto run_range = [&](unsigned worker, std::int64_t begin, std::int64_t end) {
    Tally& tally = tallies[worker];
    NetworkRealization network;
    std::vector<char> ok(n);
    for (std::int64_t k = begin; k < end; ++k) {
      Rng rng = pointprocess::make_substream(master_seed, static_cast<std::uint64_t>(k));
      realize_network(scenario, rng, network);
      for (std::size_t i = 0; i < n; ++i) {
        ok[i] = protocol_succeeds(scenario, protocols[i], network);
        tally.successes[i] += ok[i];
      }
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) tally.only[i][j] += ok[i] && !ok[j];
      }
    }
  };

  if (pool == 1) {
    run_range(0, 0, trials);
  } else {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < pool; ++w) {
      const std::int64_t begin = trials * w / pool;
      const std::int64_t end = trials * (w + 1) / pool;
      threads.emplace_back(run_range, w, begin, end);
    }
  }

  PairedCoverage out;
  out.protocols.assign(protocols.begin(), protocols.end());
  out.trials = trials;
  out.successes.assign(n, 0);
  out.only.assign(n, std::vector<std::int64_t>(n, 0));
  for (const auto& tally : tallies) {
    for (std::size_t i = 0; i < n; ++i) {
      out.successes[i] += tally.successes[i];
      for (std::size_t j = 0; j < n; ++j) out.only[i][j] += tally.only[i][j];
    }
  }
  return out;
}

CoverageEstimate monte_carlo_coverage(const Scenario& scenario, ProtocolKind protocol,
                                      std::int64_t trials, std::uint64_t master_seed,
                                      unsigned workers) {
  const ProtocolKind single[] = {protocol};
  return paired_coverage(scenario, single, trials, master_seed, workers).estimate(0);
}

}  // namespace hybridrelay::simulation
