// swarmsim: scenario runner, parameter sweeps, and frame codec utility.
//
// Exit codes: 0 success, 2 config/usage error, 3 incomplete protocol run
// (or an all-failed sweep), 4 frame parity/length error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "swarm/codec.hpp"
#include "swarm/scenario.hpp"

namespace {

// "1,2,5" or "1..20" (inclusive); both forms may be mixed per element.
template <typename T>
std::vector<T> parse_list(const std::string& text) {
    std::vector<T> out;
    std::string cur;
    auto flush = [&]() {
        if (cur.empty()) throw swarm::scenario::ConfigError("empty list item");
        auto range = cur.find("..");
        auto one = [&](const std::string& t) -> long long {
            std::size_t used = 0;
            long long v = std::stoll(t, &used);
            if (used != t.size() || v < 0)
                throw swarm::scenario::ConfigError("bad list item '" + t +
                                                   "'");
            return v;
        };
        if (range == std::string::npos) {
            out.push_back(static_cast<T>(one(cur)));
        } else {
            long long lo = one(cur.substr(0, range));
            long long hi = one(cur.substr(range + 2));
            if (hi < lo)
                throw swarm::scenario::ConfigError("bad range '" + cur + "'");
            for (long long v = lo; v <= hi; ++v)
                out.push_back(static_cast<T>(v));
        }
        cur.clear();
    };
    for (char c : text) {
        if (c == ',') flush();
        else if (c != ' ') cur += c;
    }
    flush();
    return out;
}

int cmd_run(const std::string& config, const std::string& out_dir,
            bool have_seed, std::uint64_t seed, bool quiet) {
    using namespace swarm::scenario;
    Scenario s = parse_config_file(config);
    if (have_seed) s.arena.seed = seed;
    RunResult r = run_scenario(s, out_dir);
    if (!quiet) {
        for (const auto& [k, v] : r.metrics)
            std::printf("%s = %.10g\n", k.c_str(), v);
        std::printf("wrote %s\n", out_dir.c_str());
    }
    if (!r.complete) {
        std::fprintf(stderr, "run did not complete its protocol\n");
        return 3;
    }
    return 0;
}

int cmd_sweep(const std::string& config, const std::string& out_dir,
              const std::string& n_text, const std::string& seed_text,
              bool quiet) {
    using namespace swarm::scenario;
    const auto ns = parse_list<int>(n_text);
    const auto seeds = parse_list<std::uint64_t>(seed_text);
    Scenario base = parse_config_file(config);
    const auto result = sweep(base, ns, seeds);

    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::ofstream f(fs::path(out_dir) / "results.csv", std::ios::binary);
    if (!f) throw std::runtime_error("cannot write results.csv");
    swarm::experiments::write_results_csv(f, result);

    std::size_t failed = 0;
    for (const auto& row : result.rows)
        if (row.metric == "incomplete_run") ++failed;
    const std::size_t cells = ns.size() * seeds.size();
    if (!quiet)
        std::printf("%zu cells, %zu failed; wrote %s\n", cells, failed,
                    out_dir.c_str());
    if (failed == cells) {
        std::fprintf(stderr, "every sweep cell failed\n");
        return 3;
    }
    return 0;
}

int cmd_frame(const std::string& mode, const std::vector<std::string>& args) {
    using namespace swarm::codec;
    if (mode == "encode") {
        if (args.size() != 4) {
            std::fprintf(stderr,
                         "frame encode needs: pkg_id sender receiver payload\n");
            return 2;
        }
        unsigned long long v[4];
        for (int i = 0; i < 4; ++i) {
            try {
                std::size_t used = 0;
                v[i] = std::stoull(args[static_cast<std::size_t>(i)], &used);
                if (used != args[static_cast<std::size_t>(i)].size())
                    throw std::invalid_argument("trailing junk");
            } catch (const std::exception&) {
                std::fprintf(stderr, "malformed field '%s'\n",
                             args[static_cast<std::size_t>(i)].c_str());
                return 2;
            }
        }
        if (v[0] > 1023 || v[1] > 63 || v[2] > 63 || v[3] > 255) {
            std::fprintf(stderr, "field out of range\n");
            return 2;
        }
        Packet p;
        p.pkg_id = static_cast<std::uint16_t>(v[0]);
        p.sender = static_cast<std::uint8_t>(v[1]);
        p.receiver = static_cast<std::uint8_t>(v[2]);
        p.payload = static_cast<std::uint8_t>(v[3]);
        std::printf("%s\n", encode(p).to_hex().c_str());
        return 0;
    }
    // decode
    if (args.size() != 1) {
        std::fprintf(stderr, "frame decode needs one 8-hex-digit frame\n");
        return 2;
    }
    Frame f;
    try {
        f = Frame::from_hex(args[0]);
    } catch (const LengthError& e) {
        std::fprintf(stderr, "length error: %s\n", e.what());
        return 4;
    } catch (const FormatError& e) {
        std::fprintf(stderr, "malformed frame: %s\n", e.what());
        return 2;
    }
    try {
        Packet p = decode(f);
        std::printf("pkg_id=%u sender=%u receiver=%u payload=%u\n", p.pkg_id,
                    p.sender, p.receiver, p.payload);
        return 0;
    } catch (const ParityError& e) {
        std::fprintf(stderr, "parity error: %s\n", e.what());
        return 4;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"microrobot swarm simulator"};
    app.require_subcommand(1);

    std::string config, out_dir, n_text, seed_text, mode;
    std::vector<std::string> frame_args;
    std::uint64_t seed = 0;
    bool quiet = false;

    auto* run = app.add_subcommand("run", "execute one scenario config");
    run->add_option("--config", config, "scenario config file")->required();
    run->add_option("--out", out_dir, "output directory")->required();
    auto* seed_opt =
        run->add_option("--seed", seed, "override the config seed");
    run->add_flag("--quiet", quiet, "suppress the summary");

    auto* sw = app.add_subcommand("sweep", "run a (count x seed) grid");
    sw->add_option("--config", config, "base scenario config")->required();
    sw->add_option("--out", out_dir, "output directory")->required();
    sw->add_option("--sweep-n", n_text, "robot counts, e.g. 5,10,15")
        ->required();
    sw->add_option("--sweep-seeds", seed_text, "seeds, e.g. 1..20")
        ->required();
    sw->add_flag("--quiet", quiet, "suppress the summary");

    auto* fr = app.add_subcommand("frame", "encode/decode one packet frame");
    fr->add_option("mode", mode, "encode or decode")
        ->required()
        ->check(CLI::IsMember({"encode", "decode"}));
    fr->add_option("args", frame_args, "fields or hex frame");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (run->parsed())
            return cmd_run(config, out_dir, seed_opt->count() > 0, seed,
                           quiet);
        if (sw->parsed())
            return cmd_sweep(config, out_dir, n_text, seed_text, quiet);
        return cmd_frame(mode, frame_args);
    } catch (const swarm::scenario::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
