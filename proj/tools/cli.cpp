#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>

#include <CLI11.hpp>

#include "segpipe/fcm.hpp"
#include "segpipe/histogram_eq.hpp"
#include "segpipe/image.hpp"
#include "segpipe/median_filter.hpp"
#include "segpipe/pipeline.hpp"
#include "segpipe/synth.hpp"

namespace segpipe::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OutputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Options {
    std::string input;
    std::string out_dir = "out";
    std::size_t clusters = 2;
    double fuzzifier = 2.0;
    int window = 3;
    double tol = 1e-5;
    std::size_t max_iters = 300;
    std::uint64_t seed = 0;
    bool skip_he = false;
    bool skip_median = false;
    bool ascii = false;
    HeMode he_mode = HeMode::prose;
};

struct GenOptions {
    std::string out;
    std::string truth;
    std::size_t width = 128;
    std::size_t height = 128;
    int low = 60;
    int high = 190;
    double noise_frac = 0.0;
    std::uint64_t seed = 0;
    bool ascii = false;
};

const std::map<std::string, HeMode> kHeModes{{"prose", HeMode::prose}, {"minmax", HeMode::minmax}};

std::string he_mode_name(HeMode mode) { return mode == HeMode::prose ? "prose" : "minmax"; }

void add_io_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("input", o.input, "Input PGM/PPM file")->required();
    cmd->add_option("--out-dir", o.out_dir, "Directory for outputs");
    cmd->add_flag("--ascii", o.ascii, "Write P2 instead of P5");
}

void add_fcm_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--clusters", o.clusters, "Number of clusters");
    cmd->add_option("--fuzzifier", o.fuzzifier, "Fuzzifier m > 1");
    cmd->add_option("--tol", o.tol, "Stop when max membership change < tol");
    cmd->add_option("--max-iters", o.max_iters, "Iteration cap");
    cmd->add_option("--seed", o.seed, "Seed for the initial memberships");
}

void add_he_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--he-mode", o.he_mode, "Equalization scaling")
        ->transform(CLI::CheckedTransformer(kHeModes, CLI::ignore_case));
}

FcmConfig fcm_config(const Options& o) {
    FcmConfig cfg;
    cfg.clusters = o.clusters;
    cfg.fuzzifier = o.fuzzifier;
    cfg.tolerance = o.tol;
    cfg.max_iters = o.max_iters;
    cfg.seed = o.seed;
    return cfg;
}

WindowSpec window_spec(const Options& o) {
    try {
        return WindowSpec(o.window);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

void check_fcm_flags(const Options& o) {
    try {
        fcm_config(o).validate(std::numeric_limits<std::size_t>::max());
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

json config_json(const std::string& command, const Options& o) {
    json cfg = {
        {"command", command},
        {"out_dir", o.out_dir},
        {"ascii", o.ascii},
    };
    if (command == "run" || command == "fcm") {
        cfg["clusters"] = o.clusters;
        cfg["fuzzifier"] = o.fuzzifier;
        cfg["tol"] = o.tol;
        cfg["max_iters"] = o.max_iters;
        cfg["seed"] = o.seed;
    }
    if (command == "run" || command == "median") cfg["window"] = o.window;
    if (command == "run" || command == "equalize") cfg["he_mode"] = he_mode_name(o.he_mode);
    if (command == "run") {
        cfg["skip_he"] = o.skip_he;
        cfg["skip_median"] = o.skip_median;
    }
    return cfg;
}

GrayImage read_input(const std::string& path) {
    if (!fs::exists(path)) throw InputError("input not found: " + path);
    try {
        return read_netpbm_file(path);
    } catch (const std::ios_base::failure& e) {
        throw InputError(e.what());
    }
}

class OutputWriter {
public:
    OutputWriter(const std::string& dir, bool ascii) : dir_(dir), ascii_(ascii) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) throw OutputError("cannot create output directory " + dir + ": " + ec.message());
    }

    void image(const std::string& name, const GrayImage& img) {
        const std::string path = (dir_ / name).string();
        try {
            write_pgm_file(path, img, !ascii_);
        } catch (const std::ios_base::failure& e) {
            throw OutputError(e.what());
        }
        written_.push_back(path);
    }

    void report(RunReport& r) {
        r.outputs = written_;
        const std::string path = (dir_ / "report.json").string();
        std::ofstream f(path, std::ios::trunc);
        f << to_json(r).dump(2) << '\n';
        if (!f) throw OutputError("cannot write " + path);
    }

    const std::vector<std::string>& written() const { return written_; }

private:
    fs::path dir_;
    bool ascii_;
    std::vector<std::string> written_;
};

void write_segmentation(OutputWriter& w, const SegmentationResult& res, std::size_t clusters, int max_level) {
    w.image("labels.pgm", labels_to_image(res.labels, clusters, max_level));
    for (std::size_t k = 0; k < res.membership_maps.size(); ++k) {
        w.image("membership_" + std::to_string(k) + ".pgm", res.membership_maps[k]);
    }
}

RunReport base_report(const std::string& command, const Options& o) {
    RunReport r;
    r.command = command;
    r.input = o.input;
    r.config = config_json(command, o);
    return r;
}

void fill_from_result(RunReport& r, const SegmentationResult& res) {
    r.timings_ms = {res.timings.equalize_ms, res.timings.median_ms, res.timings.fcm_ms, res.timings.defuzzify_ms,
                    res.timings.total_ms};
    r.fcm_iterations = res.fcm_iterations;
    r.objective_trace = res.objective_trace;
    r.converged = res.converged;
    r.centers = res.centers;
}

int cmd_segment(const std::string& command, Options o, std::ostream& out) {
    const WindowSpec window = window_spec(o);
    check_fcm_flags(o);
    if (command == "fcm") o.skip_he = o.skip_median = true;
    const GrayImage img = read_input(o.input);

    PipelineConfig cfg;
    cfg.window = window;
    cfg.fcm = fcm_config(o);
    cfg.he_mode = o.he_mode;
    cfg.skip_equalize = o.skip_he;
    cfg.skip_median = o.skip_median;
    const SegmentationResult res = segment(img, cfg);

    OutputWriter w(o.out_dir, o.ascii);
    if (command == "run") {
        w.image("equalized.pgm", res.equalized);
        w.image("denoised.pgm", res.denoised);
    }
    write_segmentation(w, res, o.clusters, img.max_level());
    RunReport r = base_report(command, o);
    fill_from_result(r, res);
    w.report(r);
    out << (fs::path(o.out_dir) / "report.json").string() << '\n';
    return kOk;
}

int cmd_equalize(const Options& o, std::ostream& out) {
    const GrayImage img = read_input(o.input);
    const auto t = std::chrono::steady_clock::now();
    const GrayImage eq = equalize(img, o.he_mode);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t).count();
    OutputWriter w(o.out_dir, o.ascii);
    w.image("equalized.pgm", eq);
    RunReport r = base_report("equalize", o);
    r.timings_ms.equalize = r.timings_ms.total = ms;
    w.report(r);
    out << w.written().front() << '\n';
    return kOk;
}

int cmd_median(const Options& o, std::ostream& out) {
    const WindowSpec window = window_spec(o);
    const GrayImage img = read_input(o.input);
    const auto t = std::chrono::steady_clock::now();
    const GrayImage den = median_filter(img, window);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t).count();
    OutputWriter w(o.out_dir, o.ascii);
    w.image("denoised.pgm", den);
    RunReport r = base_report("median", o);
    r.timings_ms.median = r.timings_ms.total = ms;
    w.report(r);
    out << w.written().front() << '\n';
    return kOk;
}

int cmd_gen(const GenOptions& g, std::ostream& out) {
    if (g.low < 0 || g.low > 255 || g.high < 0 || g.high > 255) throw UsageError("--low/--high must be in [0, 255]");
    if (g.width < 1 || g.height < 1) throw UsageError("--width/--height must be positive");
    if (!(g.noise_frac >= 0.0 && g.noise_frac <= 1.0)) throw UsageError("--noise-frac must be in [0, 1]");
    auto scene = synth::two_region(g.width, g.height, static_cast<Level>(g.low), static_cast<Level>(g.high));
    const GrayImage noisy = synth::add_salt_and_pepper(scene.image, g.noise_frac, g.seed);
    try {
        write_pgm_file(g.out, noisy, !g.ascii);
        if (!g.truth.empty()) write_pgm_file(g.truth, labels_to_image(scene.truth, 2, 255), !g.ascii);
    } catch (const std::ios_base::failure& e) {
        throw OutputError(e.what());
    }
    out << g.out << '\n';
    return kOk;
}

}  // namespace

json to_json(const RunReport& r) {
    return json{
        {"command", r.command},
        {"input", r.input},
        {"config", r.config},
        {"timings_ms",
         {{"equalize", r.timings_ms.equalize},
          {"median", r.timings_ms.median},
          {"fcm", r.timings_ms.fcm},
          {"defuzzify", r.timings_ms.defuzzify},
          {"total", r.timings_ms.total}}},
        {"fcm_iterations", r.fcm_iterations},
        {"objective_trace", r.objective_trace},
        {"converged", r.converged},
        {"centers", r.centers},
        {"outputs", r.outputs},
    };
}

std::vector<std::string> report_schema_errors(const json& report) {
    std::vector<std::string> errors;
    if (!report.is_object()) return {"<root is not an object>"};
    auto need = [&](const json& obj, const std::string& key, auto&& predicate, const std::string& path) {
        if (!obj.contains(key) || !predicate(obj.at(key))) errors.push_back(path);
    };
    const auto is_string = [](const json& v) { return v.is_string(); };
    const auto is_object = [](const json& v) { return v.is_object(); };
    const auto is_bool = [](const json& v) { return v.is_boolean(); };
    const auto is_count = [](const json& v) { return v.is_number_unsigned() || (v.is_number_integer() && v >= 0); };
    const auto is_time = [](const json& v) { return v.is_number() && v.get<double>() >= 0.0; };
    const auto number_array = [](const json& v) {
        if (!v.is_array()) return false;
        for (const auto& e : v) {
            if (!e.is_number()) return false;
        }
        return true;
    };
    const auto written_paths = [](const json& v) {
        if (!v.is_array()) return false;
        for (const auto& e : v) {
            if (!e.is_string() || !fs::exists(e.get<std::string>())) return false;
        }
        return true;
    };

    need(report, "input", is_string, "input");
    need(report, "config", is_object, "config");
    need(report, "timings_ms", is_object, "timings_ms");
    if (report.contains("timings_ms") && report["timings_ms"].is_object()) {
        for (const char* stage : {"equalize", "median", "fcm", "defuzzify", "total"}) {
            need(report["timings_ms"], stage, is_time, std::string("timings_ms.") + stage);
        }
    }
    need(report, "fcm_iterations", is_count, "fcm_iterations");
    need(report, "objective_trace", number_array, "objective_trace");
    need(report, "converged", is_bool, "converged");
    need(report, "outputs", written_paths, "outputs");
    return errors;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Histogram equalization + median filter + fuzzy c-means image segmentation", "segpipe"};
    app.require_subcommand(1);

    Options run_opts;
    auto* run_cmd = app.add_subcommand("run", "Full pipeline: equalize, median filter, FCM");
    add_io_flags(run_cmd, run_opts);
    add_fcm_flags(run_cmd, run_opts);
    add_he_flags(run_cmd, run_opts);
    run_cmd->add_option("--window", run_opts.window, "Median window side (odd)");
    run_cmd->add_flag("--skip-he", run_opts.skip_he, "Skip histogram equalization");
    run_cmd->add_flag("--skip-median", run_opts.skip_median, "Skip the median filter");

    Options eq_opts;
    auto* eq_cmd = app.add_subcommand("equalize", "Histogram equalization only");
    add_io_flags(eq_cmd, eq_opts);
    add_he_flags(eq_cmd, eq_opts);

    Options med_opts;
    auto* med_cmd = app.add_subcommand("median", "Median filter only");
    add_io_flags(med_cmd, med_opts);
    med_cmd->add_option("--window", med_opts.window, "Median window side (odd)");

    Options fcm_opts;
    auto* fcm_cmd = app.add_subcommand("fcm", "Fuzzy c-means on raw gray levels");
    add_io_flags(fcm_cmd, fcm_opts);
    add_fcm_flags(fcm_cmd, fcm_opts);

    GenOptions gen_opts;
    auto* gen_cmd = app.add_subcommand("gen", "Two-region synthetic image with salt-and-pepper noise");
    gen_cmd->add_option("--out", gen_opts.out, "Output PGM path")->required();
    gen_cmd->add_option("--truth", gen_opts.truth, "Optional ground-truth label image path");
    gen_cmd->add_option("--width", gen_opts.width, "Image width");
    gen_cmd->add_option("--height", gen_opts.height, "Image height");
    gen_cmd->add_option("--low", gen_opts.low, "Left-half gray level");
    gen_cmd->add_option("--high", gen_opts.high, "Right-half gray level");
    gen_cmd->add_option("--noise-frac", gen_opts.noise_frac, "Fraction of pixels replaced by impulses");
    gen_cmd->add_option("--seed", gen_opts.seed, "Noise seed");
    gen_cmd->add_flag("--ascii", gen_opts.ascii, "Write P2 instead of P5");

    std::vector<const char*> argv{"segpipe"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "segpipe: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (run_cmd->parsed()) return cmd_segment("run", run_opts, out);
        if (fcm_cmd->parsed()) return cmd_segment("fcm", fcm_opts, out);
        if (eq_cmd->parsed()) return cmd_equalize(eq_opts, out);
        if (med_cmd->parsed()) return cmd_median(med_opts, out);
        if (gen_cmd->parsed()) return cmd_gen(gen_opts, out);
    } catch (const UsageError& e) {
        err << "segpipe: " << e.what() << '\n';
        return kUsage;
    } catch (const InputError& e) {
        err << "segpipe: " << e.what() << '\n';
        return kMissingInput;
    } catch (const NetpbmError& e) {
        err << "segpipe: parse error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return kParseError;
    } catch (const OutputError& e) {
        err << "segpipe: " << e.what() << '\n';
        return kWriteError;
    } catch (const std::exception& e) {
        err << "segpipe: " << e.what() << '\n';
        return kStageError;
    }
    return kUsage;
}

}  // namespace segpipe::cli
