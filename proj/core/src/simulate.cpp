#include "hdlp/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "hdlp/channel.hpp"
#include "hdlp/errors.hpp"

namespace hdlp {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Decoder specs
// ---------------------------------------------------------------------------

DecoderSpec::Kind DecoderSpec::parse_kind(const std::string& s) {
    if (s == "ml") return Kind::ml;
    if (s == "static-lp" || s == "static_lp") return Kind::static_lp;
    if (s == "alp") return Kind::alp;
    if (s == "nsa") return Kind::nsa;
    if (s == "diversity") return Kind::diversity;
    if (s == "alp-perm" || s == "alp_perm") return Kind::alp_perm;
    if (s == "bb") return Kind::bb;
    if (s == "A") return Kind::preset_a;
    if (s == "B") return Kind::preset_b;
    if (s == "C") return Kind::preset_c;
    throw ConfigError("unknown decoder variant: " + s);
}

std::string DecoderSpec::kind_name(Kind k) {
    switch (k) {
        case Kind::ml: return "ml";
        case Kind::static_lp: return "static-lp";
        case Kind::alp: return "alp";
        case Kind::nsa: return "nsa";
        case Kind::diversity: return "diversity";
        case Kind::alp_perm: return "alp-perm";
        case Kind::bb: return "bb";
        case Kind::preset_a: return "A";
        case Kind::preset_b: return "B";
        case Kind::preset_c: return "C";
    }
    return "?";
}

namespace {

bool spec_needs_sampler(const DecoderSpec& d) {
    return (d.kind == DecoderSpec::Kind::diversity || d.kind == DecoderSpec::Kind::alp_perm ||
            d.kind == DecoderSpec::Kind::preset_a) &&
           d.attempts != 1;
}

DecodeOutcome dispatch_decoder(const DecoderSpec& spec, const LinearCode& code, const CostVector& cv,
                               RngStream& rng, const AutomorphismSampler* sampler) {
    DecodeOptions opt;
    opt.adapt_matrix = spec.adapt;
    opt.prune_inactive = spec.prune;
    opt.max_iterations = spec.max_iterations;
    opt.distance_space = spec.distance_space;

    switch (spec.kind) {
        case DecoderSpec::Kind::ml:
            return decode_ml_bruteforce(code, cv.c);
        case DecoderSpec::Kind::static_lp:
            return decode_static_lp(code, cv.c);
        case DecoderSpec::Kind::alp:
            return decode_alp(code, cv.c, nullptr, opt);
        case DecoderSpec::Kind::nsa:
            return decode_nsa(code, cv.c, {}, opt);
        case DecoderSpec::Kind::diversity:
            return decode_diversity(code, cv.c, cv.source_received, spec.attempts, rng, opt, sampler);
        case DecoderSpec::Kind::alp_perm:
            return decode_alp_perm(code, cv.c, spec.attempts, rng, opt, sampler);
        case DecoderSpec::Kind::bb:
            return decode_bb(code, cv.c, spec.depth, opt);
        case DecoderSpec::Kind::preset_a: {
            PresetOverrides ov;
            ov.diversity_attempts = spec.attempts;
            ov.distance_space = spec.distance_space;
            return decode_preset("A", code, cv.c, cv.source_received, rng, ov);
        }
        case DecoderSpec::Kind::preset_b: {
            PresetOverrides ov;
            ov.bb_depth = spec.depth;
            return decode_preset("B", code, cv.c, cv.source_received, rng, ov);
        }
        case DecoderSpec::Kind::preset_c:
            return decode_preset("C", code, cv.c, cv.source_received, rng, {});
    }
    throw ConfigError("dispatch_decoder: unhandled decoder kind");
}

}  // namespace

// ---------------------------------------------------------------------------
// Config I/O
// ---------------------------------------------------------------------------

SimConfig SimConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    try {
        SimConfig cfg;
        cfg.code_name = j.at("code").get<std::string>();
        for (const auto& dj : j.at("decoders")) {
            DecoderSpec d;
            d.kind = DecoderSpec::parse_kind(dj.at("variant").get<std::string>());
            d.name = dj.value("name", DecoderSpec::kind_name(d.kind));
            if (d.kind == DecoderSpec::Kind::preset_b)
                d.depth = dj.value("depth", -1);  // -1: per-code default resolved later
            else
                d.depth = dj.value("depth", 4);
            d.attempts = dj.value("attempts", 5);
            d.adapt = dj.value("adapt", false);
            d.prune = dj.value("prune", false);
            d.max_iterations = dj.value("max_iterations", 200);
            const std::string space = dj.value("distance_space", "unit_cube");
            if (space == "unit_cube")
                d.distance_space = DistanceSpace::unit_cube;
            else if (space == "symbol")
                d.distance_space = DistanceSpace::symbol;
            else
                throw ConfigError("config: unknown distance_space " + space);
            cfg.decoders.push_back(std::move(d));
        }
        cfg.ebn0_db = j.at("ebn0_db").get<std::vector<double>>();
        cfg.frames = j.value("frames", 1000L);
        cfg.seed = j.value("seed", std::uint64_t{1});
        cfg.max_frame_errors = j.value("max_frame_errors", 100L);
        const std::string mode = j.value("transmit_mode", "random_codeword");
        if (mode == "zero_word")
            cfg.transmit_mode = TransmitMode::zero_word;
        else if (mode == "random_codeword")
            cfg.transmit_mode = TransmitMode::random_codeword;
        else
            throw ConfigError("config: unknown transmit_mode " + mode);
        cfg.workers = j.value("workers", 1);
        cfg.record_frame_errors = j.value("record_frame_errors", false);

        if (cfg.decoders.empty()) throw ConfigError("config: decoders must be nonempty");
        if (cfg.ebn0_db.empty()) throw ConfigError("config: ebn0_db must be nonempty");
        if (cfg.frames < 1) throw ConfigError("config: frames must be >= 1");
        if (cfg.max_frame_errors < 1) throw ConfigError("config: max_frame_errors must be >= 1");
        std::set<std::string> names;
        for (const auto& d : cfg.decoders)
            if (!names.insert(d.name).second) throw ConfigError("config: duplicate decoder name " + d.name);
        return cfg;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

std::string SimConfig::to_json_text() const {
    json j;
    j["code"] = code_name;
    j["decoders"] = json::array();
    for (const auto& d : decoders) {
        json dj;
        dj["variant"] = DecoderSpec::kind_name(d.kind);
        dj["name"] = d.name;
        dj["attempts"] = d.attempts;
        dj["depth"] = d.depth;
        dj["adapt"] = d.adapt;
        dj["prune"] = d.prune;
        dj["max_iterations"] = d.max_iterations;
        dj["distance_space"] = d.distance_space == DistanceSpace::symbol ? "symbol" : "unit_cube";
        j["decoders"].push_back(dj);
    }
    j["ebn0_db"] = ebn0_db;
    j["frames"] = frames;
    j["seed"] = seed;
    j["max_frame_errors"] = max_frame_errors;
    j["transmit_mode"] = transmit_mode == TransmitMode::zero_word ? "zero_word" : "random_codeword";
    j["workers"] = workers;
    j["record_frame_errors"] = record_frame_errors;
    return j.dump(2);
}

LinearCode resolve_code(const std::string& name_or_path) {
    for (const auto& n : builtin_code_names())
        if (n == name_or_path) return builtin_code(n);
    std::ifstream in(name_or_path);
    if (!in) throw ConfigError("code is neither builtin nor a readable file: " + name_or_path);
    const std::filesystem::path p(name_or_path);
    BitMatrix h = p.extension() == ".alist" ? load_alist(in) : load_matrix(in);
    return LinearCode(std::move(h), p.stem().string());
}

// ---------------------------------------------------------------------------
// Simulation
// ---------------------------------------------------------------------------

namespace {

struct FrameResult {
    bool error = false;
    bool certified = false;
    long lp_solves = 0;
    long cuts_fs = 0;
    long cuts_rpc = 0;
    long bb_nodes = 0;
    double wall_time_s = 0.0;
};

std::uint64_t hash_doubles(std::span<const double> v) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (double d : v) {
        std::uint64_t bits;
        std::memcpy(&bits, &d, sizeof(bits));
        for (int b = 0; b < 8; ++b) {
            h ^= (bits >> (8 * b)) & 0xff;
            h *= 1099511628211ull;
        }
    }
    return h;
}

struct PointAccum {
    long frames_run = 0;
    long frame_errors = 0;
    long ml_certified = 0;
    double sum_lp_solves = 0.0;
    double sum_cuts_fs = 0.0;
    double sum_cuts_rpc = 0.0;
    double sum_bb_nodes = 0.0;
    double sum_wall_time_s = 0.0;
    std::vector<std::uint8_t> error_flags;
};

}  // namespace

SimStats run_simulation(const SimConfig& cfg) {
    const LinearCode code = resolve_code(cfg.code_name);
    const double rate = static_cast<double>(code.k()) / static_cast<double>(code.n());
    const std::size_t nd = cfg.decoders.size();

    std::vector<DecoderSpec> decoders = cfg.decoders;
    for (auto& d : decoders)
        if (d.kind == DecoderSpec::Kind::preset_b && d.depth < 0) d.depth = default_bb_depth(code);

    bool needs_sampler = false;
    for (const auto& d : decoders) needs_sampler = needs_sampler || spec_needs_sampler(d);
    AutomorphismSampler sampler;
    if (needs_sampler) sampler = sampler_for_code(code);
    const AutomorphismSampler* sampler_ptr = needs_sampler ? &sampler : nullptr;

    const int workers = std::max(1, cfg.workers);
    const long block_size = std::max<long>(16, 16L * workers);

    SimStats stats;
    for (double ebn0 : cfg.ebn0_db) {
        const double sigma = sigma_from_ebn0(ebn0, rate);
        std::vector<PointAccum> acc(nd);

        // one frame's work: identical received vector re-derived per decoder
        // (cross-checked by hash), decoder randomness from its own substream
        auto decode_frame = [&](long t, std::vector<FrameResult>& out) {
            const RngStream frame_base(cfg.seed, static_cast<std::uint64_t>(t));
            std::uint64_t first_hash = 0;
            for (std::size_t d = 0; d < nd; ++d) {
                RngStream cw_rng = frame_base.substream(0);
                RngStream noise_rng = frame_base.substream(1);
                RngStream dec_rng = frame_base.substream(2 + d);

                std::vector<std::uint8_t> word(code.n(), 0);
                if (cfg.transmit_mode == TransmitMode::random_codeword) {
                    std::vector<std::uint8_t> info(code.k());
                    for (auto& b : info) b = cw_rng.next_bool() ? 1 : 0;
                    word = encode_information(code, info);
                }
                const auto symbols = modulate(word);
                auto received = transmit(symbols, sigma, noise_rng);
                const std::uint64_t h = hash_doubles(received);
                if (d == 0)
                    first_hash = h;
                else if (h != first_hash)
                    throw NumericalFailure("run_simulation: paired-frame discipline violated");
                const CostVector cv = cost_from_received(std::move(received));

                const DecodeOutcome res = dispatch_decoder(decoders[d], code, cv, dec_rng, sampler_ptr);
                FrameResult& fr = out[d];
                fr.certified = res.ml_certificate;
                fr.error = !(res.integral() && res.hard_word() == word);
                fr.lp_solves = res.stats.lp_solves;
                fr.cuts_fs = res.stats.cuts_fs;
                fr.cuts_rpc = res.stats.cuts_rpc;
                fr.bb_nodes = res.stats.bb_nodes;
                fr.wall_time_s = res.stats.wall_time_s;
            }
        };

        long next_frame = 0;
        bool stopped = false;
        while (!stopped && next_frame < cfg.frames) {
            const long count = std::min(block_size, cfg.frames - next_frame);
            std::vector<std::vector<FrameResult>> results(static_cast<std::size_t>(count),
                                                          std::vector<FrameResult>(nd));
            std::atomic<long> cursor{0};
            std::atomic<bool> failed{false};
            std::string error_message;
            std::mutex error_mutex;

            auto worker = [&]() {
                for (;;) {
                    const long idx = cursor.fetch_add(1);
                    if (idx >= count || failed.load()) break;
                    try {
                        decode_frame(next_frame + idx, results[static_cast<std::size_t>(idx)]);
                    } catch (const std::exception& e) {
                        std::lock_guard<std::mutex> lock(error_mutex);
                        error_message = e.what();
                        failed.store(true);
                    }
                }
            };
            if (workers == 1) {
                worker();
            } else {
                std::vector<std::thread> pool;
                for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
                for (auto& th : pool) th.join();
            }
            if (failed.load()) throw Error("run_simulation: " + error_message);

            // commit in frame order; stop at the exact frame where every
            // decoder reached the error budget
            for (long i = 0; i < count && !stopped; ++i) {
                for (std::size_t d = 0; d < nd; ++d) {
                    const FrameResult& fr = results[static_cast<std::size_t>(i)][d];
                    PointAccum& a = acc[d];
                    ++a.frames_run;
                    a.frame_errors += fr.error ? 1 : 0;
                    a.ml_certified += fr.certified ? 1 : 0;
                    a.sum_lp_solves += static_cast<double>(fr.lp_solves);
                    a.sum_cuts_fs += static_cast<double>(fr.cuts_fs);
                    a.sum_cuts_rpc += static_cast<double>(fr.cuts_rpc);
                    a.sum_bb_nodes += static_cast<double>(fr.bb_nodes);
                    a.sum_wall_time_s += fr.wall_time_s;
                    if (cfg.record_frame_errors) a.error_flags.push_back(fr.error ? 1 : 0);
                }
                bool all_saturated = true;
                for (const auto& a : acc) all_saturated = all_saturated && a.frame_errors >= cfg.max_frame_errors;
                if (all_saturated) stopped = true;
            }
            next_frame += count;
        }

        for (std::size_t d = 0; d < nd; ++d) {
            const PointAccum& a = acc[d];
            SimPoint p;
            p.decoder = decoders[d].name;
            p.ebn0_db = ebn0;
            p.frames_run = a.frames_run;
            p.frame_errors = a.frame_errors;
            const double fr = a.frames_run ? static_cast<double>(a.frames_run) : 1.0;
            p.ml_cert_rate = static_cast<double>(a.ml_certified) / fr;
            p.avg_lp_solves = a.sum_lp_solves / fr;
            p.avg_cuts_fs = a.sum_cuts_fs / fr;
            p.avg_cuts_rpc = a.sum_cuts_rpc / fr;
            p.avg_bb_nodes = a.sum_bb_nodes / fr;
            p.avg_wall_time_ms = 1000.0 * a.sum_wall_time_s / fr;
            p.error_flags = a.error_flags;
            stats.points.push_back(std::move(p));
        }
    }

    // decoder-major ordering, Eb/N0 ascending within each decoder
    std::vector<SimPoint> ordered;
    std::vector<double> snrs_sorted = cfg.ebn0_db;
    std::stable_sort(snrs_sorted.begin(), snrs_sorted.end());
    for (const auto& d : decoders)
        for (double s : snrs_sorted)
            for (auto& p : stats.points)
                if (p.decoder == d.name && p.ebn0_db == s) ordered.push_back(std::move(p));
    stats.points = std::move(ordered);
    return stats;
}

const SimPoint& SimStats::point(const std::string& decoder, double ebn0_db) const {
    for (const auto& p : points)
        if (p.decoder == decoder && p.ebn0_db == ebn0_db) return p;
    throw ConfigError("SimStats::point: no such point " + decoder);
}

std::uint64_t SimStats::deterministic_digest() const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix_bytes = [&h](const void* data, std::size_t len) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= p[i];
            h *= 1099511628211ull;
        }
    };
    for (const auto& p : points) {
        mix_bytes(p.decoder.data(), p.decoder.size());
        mix_bytes(&p.ebn0_db, sizeof(p.ebn0_db));
        mix_bytes(&p.frames_run, sizeof(p.frames_run));
        mix_bytes(&p.frame_errors, sizeof(p.frame_errors));
        mix_bytes(&p.ml_cert_rate, sizeof(p.ml_cert_rate));
        mix_bytes(&p.avg_lp_solves, sizeof(p.avg_lp_solves));
        mix_bytes(&p.avg_cuts_fs, sizeof(p.avg_cuts_fs));
        mix_bytes(&p.avg_cuts_rpc, sizeof(p.avg_cuts_rpc));
        mix_bytes(&p.avg_bb_nodes, sizeof(p.avg_bb_nodes));
        if (!p.error_flags.empty()) mix_bytes(p.error_flags.data(), p.error_flags.size());
        // wall time deliberately excluded: environment noise
    }
    return h;
}

// ---------------------------------------------------------------------------
// Result I/O
// ---------------------------------------------------------------------------

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* kCsvHeader =
    "decoder,ebn0_db,frames,frame_errors,fer,ml_cert_rate,avg_lp_solves,avg_cuts_fs,avg_cuts_rpc,avg_bb_nodes,"
    "avg_wall_time_ms";

}  // namespace

void emit_csv(const SimStats& stats, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const auto& p : stats.points) {
        out << p.decoder << ',' << fmt_double(p.ebn0_db) << ',' << p.frames_run << ',' << p.frame_errors << ','
            << fmt_double(p.fer()) << ',' << fmt_double(p.ml_cert_rate) << ',' << fmt_double(p.avg_lp_solves) << ','
            << fmt_double(p.avg_cuts_fs) << ',' << fmt_double(p.avg_cuts_rpc) << ',' << fmt_double(p.avg_bb_nodes)
            << ',' << fmt_double(p.avg_wall_time_ms) << '\n';
    }
}

void emit_json(const SimStats& stats, std::ostream& out) {
    json arr = json::array();
    for (const auto& p : stats.points) {
        json rec;
        rec["decoder"] = p.decoder;
        rec["ebn0_db"] = p.ebn0_db;
        rec["frames"] = p.frames_run;
        rec["frame_errors"] = p.frame_errors;
        rec["fer"] = p.fer();
        rec["ml_cert_rate"] = p.ml_cert_rate;
        rec["avg_lp_solves"] = p.avg_lp_solves;
        rec["avg_cuts_fs"] = p.avg_cuts_fs;
        rec["avg_cuts_rpc"] = p.avg_cuts_rpc;
        rec["avg_bb_nodes"] = p.avg_bb_nodes;
        rec["avg_wall_time_ms"] = p.avg_wall_time_ms;
        arr.push_back(rec);
    }
    out << arr.dump(2) << '\n';
}

SimStats parse_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw IoError("parse_csv: bad header");
    SimStats stats;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 11) throw IoError("parse_csv: wrong column count");
        SimPoint p;
        p.decoder = cells[0];
        p.ebn0_db = std::stod(cells[1]);
        p.frames_run = std::stol(cells[2]);
        p.frame_errors = std::stol(cells[3]);
        // cells[4] is fer, derived from the two counters
        p.ml_cert_rate = std::stod(cells[5]);
        p.avg_lp_solves = std::stod(cells[6]);
        p.avg_cuts_fs = std::stod(cells[7]);
        p.avg_cuts_rpc = std::stod(cells[8]);
        p.avg_bb_nodes = std::stod(cells[9]);
        p.avg_wall_time_ms = std::stod(cells[10]);
        stats.points.push_back(std::move(p));
    }
    return stats;
}

double paired_sign_test_pvalue(long a_only_errors, long b_only_errors) {
    const long n = a_only_errors + b_only_errors;
    if (n == 0) return 1.0;
    long double log_half = -std::log(2.0L) * n;
    long double p = 0.0L;
    for (long i = 0; i <= a_only_errors; ++i) {
        const long double log_c = std::lgammal(static_cast<long double>(n) + 1) -
                                  std::lgammal(static_cast<long double>(i) + 1) -
                                  std::lgammal(static_cast<long double>(n - i) + 1);
        p += std::expl(log_c + log_half);
    }
    return static_cast<double>(std::min(p, 1.0L));
}

}  // namespace hdlp
