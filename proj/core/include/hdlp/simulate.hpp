#ifndef HDLP_SIMULATE_HPP
#define HDLP_SIMULATE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hdlp/decoders.hpp"
#include "hdlp/linear_code.hpp"

namespace hdlp {

/// One decoder under test in a simulation.
struct DecoderSpec {
    enum class Kind { ml, static_lp, alp, nsa, diversity, alp_perm, bb, preset_a, preset_b, preset_c };

    Kind kind = Kind::nsa;
    std::string name;  // CSV label; defaults to the variant name
    int attempts = 5;  // diversity / alp_perm
    int depth = 4;     // bb
    bool adapt = false;
    bool prune = false;
    int max_iterations = 200;
    DistanceSpace distance_space = DistanceSpace::unit_cube;

    /// Variant string: ml | static-lp | alp | nsa | diversity | alp-perm |
    /// bb | A | B | C. Throws ConfigError.
    static Kind parse_kind(const std::string& s);
    static std::string kind_name(Kind k);
};

enum class TransmitMode { zero_word, random_codeword };

struct SimConfig {
    std::string code_name;  // builtin name or matrix file path
    std::vector<DecoderSpec> decoders;
    std::vector<double> ebn0_db;
    long frames = 1000;
    std::uint64_t seed = 1;
    long max_frame_errors = 100;
    TransmitMode transmit_mode = TransmitMode::random_codeword;
    int workers = 1;
    bool record_frame_errors = false;  // keep per-frame error flags (paired tests)

    static SimConfig from_json_text(const std::string& text);  // throws ConfigError
    std::string to_json_text() const;
};

/// Aggregates for one (decoder, Eb/N0) point. Averages are finalized once
/// at the end of the run so that emit -> parse -> emit is bit-identical.
struct SimPoint {
    std::string decoder;
    double ebn0_db = 0.0;
    long frames_run = 0;
    long frame_errors = 0;
    double ml_cert_rate = 0.0;
    double avg_lp_solves = 0.0;
    double avg_cuts_fs = 0.0;
    double avg_cuts_rpc = 0.0;
    double avg_bb_nodes = 0.0;
    double avg_wall_time_ms = 0.0;
    std::vector<std::uint8_t> error_flags;  // per frame, when recording

    double fer() const { return frames_run ? static_cast<double>(frame_errors) / frames_run : 0.0; }
};

struct SimStats {
    std::vector<SimPoint> points;  // decoder-major, Eb/N0 ascending within

    const SimPoint& point(const std::string& decoder, double ebn0_db) const;
    /// Hash of everything except wall-clock fields; equality of digests is
    /// the determinism contract (wall time is environment noise).
    std::uint64_t deterministic_digest() const;
};

/// Monte Carlo frame-error-rate run. All decoders see the identical received
/// vector per frame (common random numbers, re-derived and hash-checked per
/// decoder); decoder-internal randomness uses a per-(frame, decoder)
/// substream, so results are a pure function of (config, seed) regardless of
/// the worker count. A point stops early once every decoder has accumulated
/// max_frame_errors frame errors.
SimStats run_simulation(const SimConfig& cfg);

/// CSV columns (exactly):
/// decoder,ebn0_db,frames,frame_errors,fer,ml_cert_rate,avg_lp_solves,
/// avg_cuts_fs,avg_cuts_rpc,avg_bb_nodes,avg_wall_time_ms
void emit_csv(const SimStats& stats, std::ostream& out);
void emit_json(const SimStats& stats, std::ostream& out);
SimStats parse_csv(std::istream& in);  // round-trip of emit_csv

/// Builtin code by name, else plain-text matrix file (or .alist). Throws
/// ConfigError when neither resolves.
LinearCode resolve_code(const std::string& name_or_path);

/// One-sided paired sign test: among discordant frames, the probability
/// under p = 1/2 of seeing at most `a_only_errors` errors unique to decoder
/// A. Small values support FER(A) < FER(B).
double paired_sign_test_pvalue(long a_only_errors, long b_only_errors);

}  // namespace hdlp

#endif  // HDLP_SIMULATE_HPP
