// ltq: long-text quality scoring, classification, statistics and mixing.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "ltq/classify.hpp"
#include "ltq/corpus.hpp"
#include "ltq/error.hpp"
#include "ltq/mixture.hpp"
#include "ltq/pipeline.hpp"
#include "ltq/stats.hpp"

namespace {

using namespace ltq;

// Reads from a file, or stdin for "-".
class Input {
public:
    explicit Input(const std::string& path) {
        if (path == "-") return;
        file_ = std::make_unique<std::ifstream>(path, std::ios::binary);
        if (!*file_) throw Error("cannot open input " + path);
    }
    std::istream& stream() { return file_ ? *file_ : std::cin; }

private:
    std::unique_ptr<std::ifstream> file_;
};

// Writes to "<path>.partial" and renames on commit(), so a failed command
// never leaves a truncated output behind. "-" writes to stdout.
class Output {
public:
    explicit Output(std::string path) : path_(std::move(path)) {
        if (path_ == "-") return;
        file_ = std::make_unique<std::ofstream>(partial(), std::ios::binary | std::ios::trunc);
        if (!*file_) throw Error("cannot open output " + path_);
    }
    ~Output() {
        if (file_ && !committed_) {
            file_.reset();
            std::error_code ec;
            std::filesystem::remove(partial(), ec);
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }
    void commit() {
        stream().flush();
        if (!stream()) throw Error("write to " + path_ + " failed");
        if (!file_) return;
        file_->close();
        std::filesystem::rename(partial(), path_);
        committed_ = true;
    }

private:
    std::string partial() const { return path_ + ".partial"; }
    std::string path_;
    std::unique_ptr<std::ofstream> file_;
    bool committed_ = false;
};

RecordPolicy policy(bool skip) { return skip ? RecordPolicy::skip : RecordPolicy::abort; }

void report_skipped(const RecordReader& r) {
    if (r.skipped() > 0) std::cerr << "ltq: skipped " << r.skipped() << " malformed records\n";
}

std::vector<ScoredDocument> read_all(std::istream& in, RecordPolicy p, bool drop_text = false) {
    RecordReader reader(in, p);
    std::vector<ScoredDocument> docs;
    while (auto rec = reader.next()) {
        if (drop_text) rec->document.text.clear();
        docs.push_back(std::move(*rec));
    }
    report_skipped(reader);
    return docs;
}

std::vector<double> parse_numbers(const std::string& csv, const char* what) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw Error(std::string("bad number in ") + what + ": \"" + item + "\"");
        out.push_back(v);
    }
    return out;
}

MetricName metric_arg(const std::string& name) {
    const auto m = parse_metric_name(name);
    if (!m) throw Error("unknown metric \"" + name + "\"");
    return *m;
}

struct Common {
    std::string input = "-";
    std::string output = "-";
    bool skip_bad = false;
};

void add_io(CLI::App* cmd, Common& c) {
    cmd->add_option("--input", c.input, "Input records (newline-delimited JSON), '-' for stdin");
    cmd->add_option("--output", c.output, "Output path, '-' for stdout");
    cmd->add_flag("--skip-bad-records", c.skip_bad, "Skip malformed records instead of aborting");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Long-text quality metrics, classification, statistics and data mixtures"};
    app.require_subcommand(1);

    // filter
    Common filter_io;
    std::size_t min_bytes = kDefaultMinBytes;
    auto* filter = app.add_subcommand("filter", "Keep documents longer than --min-bytes UTF-8 bytes");
    add_io(filter, filter_io);
    filter->add_option("--min-bytes", min_bytes, "Byte threshold (strict)")->capture_default_str();

    // score
    Common score_io;
    std::string config_path;
    PipelineConfig pc;
    std::optional<std::size_t> window, jobs;
    std::optional<std::string> diff_sign, lm_endpoint, pair_endpoint, tok_endpoint, tok_name;
    auto* score = app.add_subcommand("score", "Compute the eight quality metrics per document");
    add_io(score, score_io);
    score->add_option("--config", config_path, "Pipeline config (JSON)");
    score->add_flag("--stub-lm-scorer", pc.stub_lm_scorer, "Use the builtin bigram LM scorer");
    score->add_flag("--stub-pair-scorer", pc.stub_pair_scorer, "Use the lexical-overlap pair scorer");
    score->add_option("--lm-endpoint", lm_endpoint, "Remote LM scorer base URL");
    score->add_option("--pair-endpoint", pair_endpoint, "Remote pair scorer base URL");
    score->add_option("--tokenizer-endpoint", tok_endpoint, "Remote tokenizer base URL");
    score->add_option("--tokenizer-name", tok_name, "Tokenizer name for the LM handshake");
    score->add_option("--window-size", window, "Coherence window size w (divisible by 4)");
    score->add_option("--diff-sign", diff_sign, "as_printed | improvement")
        ->check(CLI::IsMember({"as_printed", "improvement"}));
    score->add_option("--jobs", jobs, "Documents scored concurrently");

    // classify
    Common classify_io;
    std::string thresholds_path;
    auto* classify_cmd = app.add_subcommand("classify", "Label scored documents");
    add_io(classify_cmd, classify_io);
    classify_cmd->add_option("--thresholds", thresholds_path, "Threshold config (JSON)")->required();

    // stats
    Common stats_io;
    std::string format = "json";
    auto* stats = app.add_subcommand("stats", "Domain/category/length statistics of labeled documents");
    add_io(stats, stats_io);
    stats->add_option("--format", format, "json | text")->check(CLI::IsMember({"json", "text"}));

    // hist
    Common hist_io;
    std::string hist_metric, edges_csv;
    auto* hist = app.add_subcommand("hist", "Histogram of one metric as CSV");
    add_io(hist, hist_io);
    hist->add_option("--metric", hist_metric, "Metric name")->required();
    hist->add_option("--edges", edges_csv, "Ascending bin edges, comma-separated")->required();

    // sample
    Common sample_io;
    std::string sample_metric, range_csv;
    std::size_t k = 30;
    std::optional<std::uint64_t> sample_seed;
    auto* sample = app.add_subcommand("sample", "Seeded sample of documents with a metric in [LO,HI)");
    add_io(sample, sample_io);
    sample->add_option("--metric", sample_metric, "Metric name")->required();
    sample->add_option("--range", range_csv, "LO,HI")->required();
    sample->add_option("--k", k, "Sample size")->capture_default_str();
    sample->add_option("--seed", sample_seed, "Random seed")->required();

    // mix
    Common mix_io;
    std::string recipe_path;
    std::optional<std::uint64_t> mix_seed;
    auto* mix = app.add_subcommand("mix", "Build a training-data manifest from labeled documents");
    add_io(mix, mix_io);
    mix->add_option("--recipe", recipe_path, "Mixture recipe (JSON)")->required();
    mix->add_option("--seed", mix_seed, "Random seed")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*filter) {
            Input in(filter_io.input);
            Output out(filter_io.output);
            RecordReader reader(in.stream(), policy(filter_io.skip_bad));
            std::size_t kept = 0, seen = 0;
            while (auto rec = reader.next()) {
                ++seen;
                if (!passes_length_gate(rec->document, min_bytes)) continue;
                out.stream() << format_record(*rec) << '\n';
                ++kept;
            }
            out.commit();
            report_skipped(reader);
            std::cerr << "ltq filter: kept " << kept << " of " << seen << " documents\n";
        } else if (*score) {
            PipelineConfig cfg = config_path.empty() ? PipelineConfig{} : PipelineConfig::load(config_path);
            cfg.stub_lm_scorer = pc.stub_lm_scorer;
            cfg.stub_pair_scorer = pc.stub_pair_scorer;
            if (lm_endpoint) cfg.lm_endpoint = lm_endpoint;
            if (pair_endpoint) cfg.pair_endpoint = pair_endpoint;
            if (cfg.stub_lm_scorer) cfg.lm_endpoint.reset();
            if (cfg.stub_pair_scorer) cfg.pair_endpoint.reset();
            if (tok_endpoint) {
                cfg.tokenizer.kind = TokenizerKind::external;
                cfg.tokenizer.endpoint = tok_endpoint;
            }
            if (tok_name) cfg.tokenizer_name = *tok_name;
            if (window) cfg.window_size = *window;
            if (jobs) cfg.jobs = *jobs;
            if (diff_sign)
                cfg.diff_sign = *diff_sign == "improvement" ? DiffSign::improvement : DiffSign::as_printed;
            const Pipeline pipeline(cfg);
            Input in(score_io.input);
            Output out(score_io.output);
            const auto n = score_stream(in.stream(), out.stream(), pipeline, cfg.jobs,
                                        policy(score_io.skip_bad));
            out.commit();
            std::cerr << "ltq score: wrote " << n << " records\n";
        } else if (*classify_cmd) {
            const auto config = ThresholdConfig::load(thresholds_path);
            Input in(classify_io.input);
            Output out(classify_io.output);
            RecordReader reader(in.stream(), policy(classify_io.skip_bad));
            std::size_t counts[3] = {0, 0, 0}, dropped = 0;
            while (auto rec = reader.next()) {
                try {
                    if (!rec->metrics) throw Error("record has no metrics");
                    rec->category = ltq::classify(*rec->metrics, rec->document.domain, config);
                } catch (const Error& e) {
                    if (!classify_io.skip_bad)
                        throw Error("document \"" + rec->document.id + "\": " + e.what());
                    ++dropped;
                    continue;
                }
                ++counts[static_cast<int>(*rec->category)];
                out.stream() << format_record(*rec) << '\n';
            }
            out.commit();
            report_skipped(reader);
            std::cerr << "ltq classify: holistic " << counts[0] << ", aggregated " << counts[1]
                      << ", chaotic " << counts[2];
            if (dropped) std::cerr << ", unclassifiable " << dropped;
            std::cerr << '\n';
        } else if (*stats) {
            Input in(stats_io.input);
            Output out(stats_io.output);
            RecordReader reader(in.stream(), policy(stats_io.skip_bad));
            StatsReport report;
            while (auto rec = reader.next()) {
                const ScoredDocument one[] = {std::move(*rec)};
                report.merge(aggregate(one));
            }
            if (format == "text")
                write_report_text(report, out.stream());
            else
                write_report_json(report, out.stream());
            out.commit();
            report_skipped(reader);
        } else if (*hist) {
            const MetricName m = metric_arg(hist_metric);
            Input in(hist_io.input);
            const auto docs = read_all(in.stream(), policy(hist_io.skip_bad), true);
            const auto h = histogram(docs, m, parse_numbers(edges_csv, "--edges"));
            Output out(hist_io.output);
            write_histogram_csv(h, out.stream());
            out.commit();
        } else if (*sample) {
            const MetricName m = metric_arg(sample_metric);
            const auto range = parse_numbers(range_csv, "--range");
            if (range.size() != 2 || !(range[0] <= range[1])) throw Error("--range must be LO,HI with LO <= HI");
            Input in(sample_io.input);
            const auto docs = read_all(in.stream(), policy(sample_io.skip_bad));
            const auto picked = sample_around(docs, m, range[0], range[1], k, *sample_seed);
            Output out(sample_io.output);
            write_scored(picked, out.stream());
            out.commit();
            std::cerr << "ltq sample: " << picked.size() << " documents\n";
        } else if (*mix) {
            auto recipe = MixtureRecipe::load(recipe_path);
            recipe.seed = *mix_seed;
            Input in(mix_io.input);
            const auto docs = read_all(in.stream(), policy(mix_io.skip_bad), true);
            const auto manifest = build_manifest(docs, recipe);
            Output out(mix_io.output);
            write_manifest(manifest, out.stream());
            out.commit();
            for (const auto& w : manifest.warnings) std::cerr << "ltq mix: warning: " << w << '\n';
            const auto summary = summarize_manifest(manifest);
            std::cerr << "ltq mix: " << manifest.entries.size() << " documents, "
                      << summary.total().tokens << " tokens\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "ltq: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
