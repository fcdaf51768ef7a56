// pstack: maintain the extremum stack of a grid-quantized stream, evaluate
// rate-independent queries against it, and serialize it bit-exactly.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 I/O or format error.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pstack/baselines.hpp"
#include "pstack/codec.hpp"
#include "pstack/preisach.hpp"
#include "pstack/queries.hpp"
#include "pstack/signals.hpp"
#include "pstack/verify.hpp"

namespace {

using namespace pstack;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::string format_ratio(double ratio) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", ratio);
    return buf;
}

// RFC-4180 quoting for fields that embed commas or quotes.
std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open: " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

bool looks_like_psig(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open: " + path);
    char magic[4] = {};
    in.read(magic, 4);
    return in.gcount() == 4 && std::equal(magic, magic + 4, kPsigMagic);
}

struct CompressStats {
    std::uint64_t last_index = 0;
    std::size_t depth = 0;
    std::uint64_t bits = 0;
    std::uint64_t raw_bits = 0;
    double ratio = 0.0;
};

void print_compress_stats(const CompressStats& st, const std::string& format) {
    if (format == "csv") {
        std::cout << "n,k,size_bits,raw_size_bits,ratio\n"
                  << st.last_index << ',' << st.depth << ',' << st.bits << ',' << st.raw_bits
                  << ',' << format_ratio(st.ratio) << '\n';
    } else if (format == "jsonl") {
        json row{{"n", st.last_index},
                 {"k", st.depth},
                 {"size_bits", st.bits},
                 {"raw_size_bits", st.raw_bits},
                 {"ratio", st.ratio}};
        std::cout << row.dump() << '\n';
    } else {
        std::cout << "n=" << st.last_index << " k=" << st.depth << " size_bits=" << st.bits
                  << " raw_size_bits=" << st.raw_bits << " ratio=" << format_ratio(st.ratio)
                  << '\n';
    }
}

int cmd_compress(const std::string& input, std::optional<std::uint32_t> steps,
                 const std::string& mode, const std::string& output, std::size_t column,
                 bool clamp, const std::string& format) {
    const bool binary_input = looks_like_psig(input);
    std::optional<EngineState> state;
    EventLog log{Resolution(2), {}, 0, Direction::None};
    std::uint64_t samples = 0;
    const bool want_log = mode == "eventlog";

    auto feed = [&](Resolution res, GridValue v) {
        ++samples;
        if (!state) {
            state = initial_state(res, v);
            return;
        }
        const StepEvent ev = step(*state, v);
        if (want_log && ev.confirmed) log.extrema.push_back(ev.confirmed->value);
    };

    Resolution res(2);
    if (binary_input) {
        std::ifstream in(input, std::ios::binary);
        char magic[4] = {};
        std::uint8_t header[4] = {};
        in.read(magic, 4);
        in.read(reinterpret_cast<char*>(header), 4);
        if (in.gcount() != 4) throw ParseError("truncated PSIG header");
        const std::uint32_t raw_steps = header[0] | (header[1] << 8) | (header[2] << 16) |
                                        (static_cast<std::uint32_t>(header[3]) << 24);
        if (raw_steps < 2 || raw_steps > 0xFFFF) throw ParseError("PSIG resolution out of range");
        res = Resolution(raw_steps);
        if (steps && *steps != res.steps)
            throw Error("--L disagrees with the PSIG header (" + std::to_string(res.steps) + ")");
        std::uint8_t le[2];
        while (in.read(reinterpret_cast<char*>(le), 2)) {
            const GridValue v = le[0] | (static_cast<GridValue>(le[1]) << 8);
            if (!res.contains(v)) throw ParseError("PSIG sample off the grid");
            feed(res, v);
        }
        if (in.gcount() != 0) throw ParseError("trailing odd byte in PSIG stream");
    } else {
        if (!steps) throw CLI::ValidationError("--L is required for CSV input");
        res = Resolution(*steps);
        std::ifstream in(input);
        if (!in) throw Error("cannot open: " + input);
        const RangePolicy policy = clamp ? RangePolicy::Clamp : RangePolicy::Reject;
        for_each_csv_value(in, column,
                           [&](double x) { feed(res, quantize(x, res, policy)); });
    }
    if (!state) throw Error("input contains no samples");

    EncodedBlob blob;
    std::uint64_t bits = 0;
    if (want_log) {
        log.resolution = res;
        log.current = state->current;
        log.direction = state->direction;
        blob = encode_eventlog(log);
        bits = eventlog_size_bits(log);
    } else {
        blob = encode_final(*state);
        bits = size_bits(*state);
    }
    std::ofstream out(output, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + output);
    out.write(reinterpret_cast<const char*>(blob.data()), static_cast<std::streamsize>(blob.size()));
    if (!out) throw Error("write failed: " + output);

    CompressStats st;
    st.last_index = samples - 1;
    st.depth = state->stack.size();
    st.bits = bits;
    st.raw_bits = raw_size_bits(st.last_index, res);
    st.ratio = static_cast<double>(st.raw_bits) / static_cast<double>(st.bits);
    print_compress_stats(st, format);
    return kExitOk;
}

EngineState state_from_blob(const std::string& path) {
    const auto bytes = read_file_bytes(path);
    const DecodedBlob blob = decode(bytes);
    return blob.mode() == CodecMode::FinalState ? blob.state() : blob.log().replay();
}

int cmd_query(const std::string& blob_path, const std::string& indicator,
              const std::string& measure_path) {
    const EngineState state = state_from_blob(blob_path);
    if (!indicator.empty()) {
        std::uint32_t max = 0, min = 0;
        char comma = 0;
        std::istringstream is(indicator);
        if (!(is >> max >> comma >> min) || comma != ',' || !(is >> std::ws).eof())
            throw CLI::ValidationError("--indicator expects \"M,m\"");
        if (max < min) throw CLI::ValidationError("--indicator expects M >= m");
        std::cout << indicator_eval(state, {max, min}) << '\n';
        return kExitOk;
    }
    const PreisachMeasure measure = load_measure_file(measure_path, state.resolution);
    std::cout << staircase_output(measure, state) << '\n';
    return kExitOk;
}

int cmd_inspect(const std::string& blob_path, const std::string& format) {
    const auto bytes = read_file_bytes(blob_path);
    const DecodedBlob blob = decode(bytes);
    const EngineState state =
        blob.mode() == CodecMode::FinalState ? blob.state() : blob.log().replay();
    if (format == "jsonl") {
        json vertices = json::array();
        for (const auto& v : state.stack) vertices.push_back({v.max, v.min});
        json row{{"mode", blob.mode() == CodecMode::FinalState ? "final" : "eventlog"},
                 {"L", state.resolution.steps},
                 {"k", state.stack.size()},
                 {"vertices", vertices},
                 {"pending", state.pending_max ? json(*state.pending_max) : json(nullptr)},
                 {"current", state.current},
                 {"direction", to_string(state.direction)}};
        if (blob.mode() == CodecMode::EventLog)
            row["confirmations"] = blob.log().extrema.size();
        std::cout << row.dump() << '\n';
    } else {
        std::cout << "mode: "
                  << (blob.mode() == CodecMode::FinalState ? "final" : "eventlog") << '\n'
                  << "L: " << state.resolution.steps << '\n';
        if (blob.mode() == CodecMode::EventLog)
            std::cout << "confirmations: " << blob.log().extrema.size() << '\n';
        std::cout << "k: " << state.stack.size() << '\n' << "vertices:";
        for (const auto& v : state.stack) std::cout << " (" << v.max << "," << v.min << ")";
        std::cout << '\n' << "pending: ";
        if (state.pending_max) std::cout << *state.pending_max; else std::cout << "-";
        std::cout << '\n'
                  << "current: " << state.current << '\n'
                  << "direction: " << to_string(state.direction) << '\n';
    }
    return kExitOk;
}

int cmd_verify(const std::string& suite, std::uint64_t trials, std::uint64_t seed,
               const std::string& format) {
    verify::SuiteOptions options;
    options.trials = trials;
    options.seed = seed;
    if (trials == 0) std::cerr << "warning: trials=0, all suites pass vacuously\n";

    std::vector<verify::SuiteReport> reports;
    if (suite == "all") {
        reports = verify::run_all(options);
    } else if (suite == "engine") {
        reports.push_back(verify::run_engine_suite(options));
    } else if (suite == "preisach") {
        reports.push_back(verify::run_preisach_suite(options));
    } else if (suite == "queries") {
        reports.push_back(verify::run_queries_suite(options));
    } else {
        reports.push_back(verify::run_codec_suite(options));
    }

    bool all_passed = true;
    if (format == "csv") std::cout << "suite,trials,failures\n";
    for (const auto& r : reports) {
        all_passed = all_passed && r.passed();
        if (format == "csv") {
            std::cout << r.name << ',' << r.trials << ',' << r.failures << '\n';
        } else if (format == "jsonl") {
            json row{{"suite", r.name}, {"trials", r.trials}, {"failures", r.failures}};
            if (!r.first_failure.empty()) row["first_failure"] = r.first_failure;
            std::cout << row.dump() << '\n';
        } else {
            std::cout << "suite " << r.name << ": " << (r.passed() ? "pass" : "FAIL") << " ("
                      << r.trials << " trials, " << r.failures << " failures)\n";
        }
        if (!r.passed() && format != "jsonl")
            std::cerr << "  first failure: seed=" << seed << " " << r.first_failure << '\n';
    }
    return all_passed ? kExitOk : kExitVerifyFailed;
}

GeneratorSpec parse_gen_spec(const std::string& text) {
    const std::size_t colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    GeneratorSpec spec;
    spec.resolution = Resolution(64);
    if (kind == "walk") spec.kind = StreamKind::Walk;
    else if (kind == "sine_drift") spec.kind = StreamKind::SineDrift;
    else if (kind == "monotone_runs") spec.kind = StreamKind::MonotoneRuns;
    else if (kind == "pop_storm") spec.kind = StreamKind::PopStorm;
    else throw CLI::ValidationError("unknown generator kind: " + kind);

    bool have_length = false;
    if (colon != std::string::npos) {
        std::istringstream rest(text.substr(colon + 1));
        std::string item;
        while (std::getline(rest, item, ',')) {
            const std::size_t eq = item.find('=');
            if (eq == std::string::npos)
                throw CLI::ValidationError("generator parameter needs key=value: " + item);
            const std::string key = item.substr(0, eq);
            const std::string value = item.substr(eq + 1);
            try {
                if (key == "n") { spec.length = std::stoull(value); have_length = true; }
                else if (key == "L") spec.resolution = Resolution(
                    static_cast<std::uint32_t>(std::stoul(value)));
                else if (key == "seed") spec.seed = std::stoull(value);
                else if (key == "step") spec.step_bound = static_cast<std::uint32_t>(std::stoul(value));
                else if (key == "runs") spec.run_count = static_cast<std::uint32_t>(std::stoul(value));
                else if (key == "amp") spec.amplitude = std::stod(value);
                else if (key == "period") spec.period = std::stod(value);
                else if (key == "drift") spec.drift = std::stod(value);
                else if (key == "d") spec.depth = static_cast<std::uint32_t>(std::stoul(value));
                else throw CLI::ValidationError("unknown generator parameter: " + key);
            } catch (const std::invalid_argument&) {
                throw CLI::ValidationError("bad value for " + key + ": " + value);
            } catch (const std::out_of_range&) {
                throw CLI::ValidationError("value out of range for " + key + ": " + value);
            }
        }
    }
    if (!have_length) spec.length = spec.kind == StreamKind::PopStorm ? 1 : 1024;
    return spec;
}

struct BaselineSpec {
    std::string name;      // "paa:w=4" as given
    bool is_paa = false;
    std::uint32_t window = 4;
    Rational eps{1, 1};
};

std::vector<BaselineSpec> parse_baselines(const std::string& text) {
    std::vector<BaselineSpec> out;
    if (text.empty()) return out;
    std::string normalized = text;
    std::replace(normalized.begin(), normalized.end(), ';', ',');
    std::istringstream list(normalized);
    std::string item;
    while (std::getline(list, item, ',')) {
        BaselineSpec spec;
        spec.name = item;
        const std::size_t colon = item.find(':');
        const std::string kind = item.substr(0, colon);
        if (kind == "paa") {
            spec.is_paa = true;
            if (colon != std::string::npos) {
                const std::string params = item.substr(colon + 1);
                if (params.rfind("w=", 0) != 0)
                    throw CLI::ValidationError("paa expects w=<int>: " + item);
                spec.window = static_cast<std::uint32_t>(std::stoul(params.substr(2)));
            }
        } else if (kind == "sdt") {
            if (colon != std::string::npos) {
                const std::string params = item.substr(colon + 1);
                if (params.rfind("eps=", 0) != 0)
                    throw CLI::ValidationError("sdt expects eps=<decimal>: " + item);
                spec.eps = Rational::from_decimal(params.substr(4));
            }
        } else {
            throw CLI::ValidationError("unknown baseline: " + kind);
        }
        out.push_back(spec);
    }
    return out;
}

int cmd_bench(const std::vector<std::string>& gen_specs, const std::string& baselines_text,
              const std::string& format) {
    const auto baselines = parse_baselines(baselines_text);
    const bool machine = format == "csv" || format == "jsonl";
    if (format == "csv")
        std::cout << "stream,method,n,bits,raw_bits,ratio,preserved,max_step_pops,"
                     "amortized_ops\n";

    for (const std::string& spec_text : gen_specs) {
        const GeneratorSpec spec = parse_gen_spec(spec_text);
        const std::vector<GridValue> stream = generate(spec);
        const Resolution res = spec.resolution;
        const std::uint64_t last_index = stream.size() - 1;
        const std::uint64_t raw = raw_size_bits(last_index, res);

        const auto t0 = std::chrono::steady_clock::now();
        const PopProfile profile = pop_count_profile(res, stream);
        const EngineState state = run(res, stream);
        const auto t1 = std::chrono::steady_clock::now();
        const double wall_ms =
            std::chrono::duration<double, std::milli>(t1 - t0).count();
        const double amortized = stream.size() > 1
                                     ? static_cast<double>(profile.total_pushes +
                                                           profile.total_pops) /
                                           static_cast<double>(stream.size() - 1)
                                     : 0.0;

        auto emit = [&](const std::string& method, std::uint64_t bits, bool preserved) {
            const double ratio = static_cast<double>(raw) / static_cast<double>(bits);
            if (format == "csv") {
                std::cout << csv_field(spec_text) << ',' << csv_field(method) << ','
                          << last_index << ',' << bits << ',' << raw << ','
                          << format_ratio(ratio) << ',' << (preserved ? "yes" : "no") << ','
                          << profile.max_single_step_pops << ',' << format_ratio(amortized)
                          << '\n';
            } else if (format == "jsonl") {
                json row{{"stream", spec_text},
                         {"method", method},
                         {"n", last_index},
                         {"bits", bits},
                         {"raw_bits", raw},
                         {"ratio", ratio},
                         {"preserved", preserved},
                         {"max_step_pops", profile.max_single_step_pops},
                         {"amortized_ops", amortized}};
                std::cout << row.dump() << '\n';
            } else {
                std::cout << spec_text << " " << method << ": n=" << last_index
                          << " bits=" << bits << " raw=" << raw
                          << " ratio=" << format_ratio(ratio)
                          << " preserved=" << (preserved ? "yes" : "no")
                          << " max_step_pops=" << profile.max_single_step_pops
                          << " amortized_ops=" << format_ratio(amortized)
                          << " wall_ms=" << format_ratio(wall_ms) << '\n';
            }
        };

        // pstack row: preservation = every query answer survives the round trip
        {
            const EncodedBlob blob = encode_final(state);
            const EngineState back = decode(blob).state();
            const PreisachMeasure probe = random_measure(res, spec.seed);
            const bool preserved = back == state && answer_all(back) == answer_all(state) &&
                                   staircase_output(probe, back) ==
                                       staircase_output(probe, state);
            emit("pstack", size_bits(state), preserved);
        }
        for (const BaselineSpec& b : baselines) {
            if (b.is_paa) {
                const PaaModel model = paa_compress(stream, b.window);
                const auto recon = requantize(paa_reconstruct(model), res);
                const auto check = r_preservation_check(res, stream, recon);
                emit(b.name, paa_model_bits(model, res), check.preserved);
                if (!check.preserved && !machine)
                    std::cout << "  witness: " << check.witness << '\n';
            } else {
                const SwingingDoorModel model = sdt_compress(stream, b.eps);
                const auto recon = requantize(sdt_reconstruct(model), res);
                const auto check = r_preservation_check(res, stream, recon);
                emit(b.name, sdt_model_bits(model, res), check.preserved);
                if (!check.preserved && !machine)
                    std::cout << "  witness: " << check.witness << '\n';
            }
        }
    }
    return kExitOk;
}

int cmd_gen(const std::string& kind, std::size_t length, std::uint32_t steps,
            std::uint64_t seed, const std::string& out_path, std::uint32_t step_bound,
            std::uint32_t runs, std::uint32_t depth, double amplitude, double period,
            double drift) {
    GeneratorSpec spec;
    if (kind == "walk") spec.kind = StreamKind::Walk;
    else if (kind == "sine_drift") spec.kind = StreamKind::SineDrift;
    else if (kind == "monotone_runs") spec.kind = StreamKind::MonotoneRuns;
    else if (kind == "pop_storm") spec.kind = StreamKind::PopStorm;
    else throw CLI::ValidationError("unknown kind: " + kind);
    spec.length = length;
    spec.resolution = Resolution(steps);
    spec.seed = seed;
    spec.step_bound = step_bound;
    spec.run_count = runs;
    spec.depth = depth;
    spec.amplitude = amplitude;
    spec.period = period;
    spec.drift = drift;

    const std::vector<GridValue> stream = generate(spec);
    const bool csv = out_path.size() >= 4 && out_path.substr(out_path.size() - 4) == ".csv";
    std::ofstream out(out_path, csv ? std::ios::out : std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + out_path);
    if (csv) {
        char buf[64];
        for (GridValue v : stream) {
            std::snprintf(buf, sizeof(buf), "%.10g\n",
                          static_cast<double>(v) / static_cast<double>(spec.resolution.steps));
            out << buf;
        }
    } else {
        write_psig(out, spec.resolution, stream);
    }
    if (!out) throw Error("write failed: " + out_path);
    std::cout << "wrote " << stream.size() << " samples to " << out_path << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"extremum-stack compression and rate-independent queries"};
    app.require_subcommand(1);

    // compress
    auto* compress = app.add_subcommand("compress", "compress a stream into a .pstk blob");
    std::string in_path, out_path, mode = "final", format = "human";
    std::optional<std::uint32_t> steps_flag;
    std::size_t column = 0;
    bool clamp = false;
    compress->add_option("--input", in_path, "CSV of reals in [0,1] or a PSIG stream")
        ->required();
    compress->add_option("--L", steps_flag, "grid steps (required for CSV input)");
    compress->add_option("--mode", mode, "final|eventlog")
        ->check(CLI::IsMember({"final", "eventlog"}));
    compress->add_option("--output", out_path, "blob path")->required();
    compress->add_option("--column", column, "0-based CSV column");
    compress->add_flag("--clamp", clamp, "clamp out-of-range values instead of rejecting");
    compress->add_option("--format", format, "human|csv|jsonl")
        ->check(CLI::IsMember({"human", "csv", "jsonl"}));

    // query
    auto* query = app.add_subcommand("query", "evaluate a query against a blob");
    std::string blob_path, indicator, measure_path;
    query->add_option("--blob", blob_path, ".pstk blob")->required();
    auto* ind_opt = query->add_option("--indicator", indicator, "indicator query \"M,m\"");
    auto* mea_opt = query->add_option("--measure", measure_path, "measure file");
    ind_opt->excludes(mea_opt);

    // inspect
    auto* inspect = app.add_subcommand("inspect", "decode a blob and show its state");
    std::string inspect_blob, inspect_format = "human";
    inspect->add_option("--blob", inspect_blob, ".pstk blob")->required();
    inspect->add_option("--format", inspect_format, "human|jsonl")
        ->check(CLI::IsMember({"human", "jsonl"}));

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run the property suites");
    std::string suite = "all", verify_format = "human";
    std::uint64_t trials = 1000, seed = 0;
    verify_cmd->add_option("--suite", suite, "all|engine|preisach|queries|codec")
        ->check(CLI::IsMember({"all", "engine", "preisach", "queries", "codec"}));
    verify_cmd->add_option("--trials", trials, "trials per suite");
    verify_cmd->add_option("--seed", seed, "base seed");
    verify_cmd->add_option("--format", verify_format, "human|csv|jsonl")
        ->check(CLI::IsMember({"human", "csv", "jsonl"}));

    // bench
    auto* bench = app.add_subcommand("bench", "compare pstack against lossy baselines");
    std::vector<std::string> gen_specs;
    std::string baselines_text, bench_format = "human";
    bench->add_option("--gen", gen_specs,
                      "generator spec, e.g. walk:n=4096,L=64,seed=1 (repeatable)")
        ->required();
    bench->add_option("--baselines", baselines_text, "e.g. paa:w=4;sdt:eps=2");
    bench->add_option("--format", bench_format, "human|csv|jsonl")
        ->check(CLI::IsMember({"human", "csv", "jsonl"}));

    // gen
    auto* gen = app.add_subcommand("gen", "write a synthetic stream");
    std::string gen_kind = "walk", gen_out;
    std::size_t gen_n = 1024;
    std::uint32_t gen_steps = 64, gen_step_bound = 3, gen_runs = 8, gen_depth = 8;
    std::uint64_t gen_seed = 0;
    double gen_amp = 0.45, gen_period = 64.0, gen_drift = 0.0;
    gen->add_option("--kind", gen_kind, "walk|sine_drift|monotone_runs|pop_storm")->required();
    gen->add_option("--n", gen_n, "sample count");
    gen->add_option("--L", gen_steps, "grid steps");
    gen->add_option("--seed", gen_seed, "seed");
    gen->add_option("--out", gen_out, ".psig (binary) or .csv")->required();
    gen->add_option("--step-bound", gen_step_bound, "walk step bound");
    gen->add_option("--runs", gen_runs, "monotone run count");
    gen->add_option("--depth", gen_depth, "pop_storm nesting depth");
    gen->add_option("--amplitude", gen_amp, "sine amplitude");
    gen->add_option("--period", gen_period, "sine period in samples");
    gen->add_option("--drift", gen_drift, "per-sample drift");

    try {
        app.parse(argc, argv);
        if (compress->parsed())
            return cmd_compress(in_path, steps_flag, mode, out_path, column, clamp, format);
        if (query->parsed()) {
            if (indicator.empty() && measure_path.empty())
                throw CLI::ValidationError("query needs --indicator or --measure");
            return cmd_query(blob_path, indicator, measure_path);
        }
        if (inspect->parsed()) return cmd_inspect(inspect_blob, inspect_format);
        if (verify_cmd->parsed()) return cmd_verify(suite, trials, seed, verify_format);
        if (bench->parsed()) return cmd_bench(gen_specs, baselines_text, bench_format);
        if (gen->parsed())
            return cmd_gen(gen_kind, gen_n, gen_steps, gen_seed, gen_out, gen_step_bound,
                           gen_runs, gen_depth, gen_amp, gen_period, gen_drift);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    } catch (const pstack::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
}
