// Command-line front end: load a CSV, run granular-ball generation plus a
// downstream back-end, and write a JSON (or CSV summary) report.
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "mdlgbg/errors.hpp"
#include "mdlgbg/pipeline.hpp"

int main(int argc, char** argv) {
    CLI::App app{"MDL granular-ball generation and clustering benchmark"};

    std::string input;
    std::string label_col = "last";
    std::string backend = "ac";
    std::string k_text = "auto";
    std::size_t runs = 1;
    std::uint64_t seed = 0;
    bool no_normalize = false;
    std::optional<std::size_t> n_min;
    std::optional<std::size_t> k0;
    std::string output;
    std::string format = "json";
    bool weight_by_size = false;
    bool no_timings = false;

    app.add_option("--input", input, "CSV file with samples as rows")->required();
    app.add_option("--label-col", label_col, "label column: header name, zero-based index, 'last' or 'none'");
    app.add_option("--backend", backend, "ball-center clustering: ac, kmeanspp or none");
    app.add_option("--k", k_text, "cluster count, or 'auto' for the number of label classes");
    app.add_option("--runs", runs, "seeded back-end repetitions")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "base seed; run i uses seed + i");
    app.add_flag("--no-normalize", no_normalize, "skip min-max scaling");
    app.add_option("--n-min", n_min, "override the adaptive minimum ball size")->check(CLI::Range(2, 1 << 30));
    app.add_option("--k0", k0, "override the initial ball count")->check(CLI::PositiveNumber);
    app.add_option("--output", output, "report path (default: stdout)");
    app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--weight-by-size", weight_by_size, "weight ball centers by ball size in the back-end");
    app.add_flag("--no-timings", no_timings, "write null timings so reports are byte-stable");

    CLI11_PARSE(app, argc, argv);

    try {
        mdlgbg::RunConfig config;
        config.input_path = input;
        config.label_column = mdlgbg::LabelColumn::parse(label_col);
        config.backend = mdlgbg::parse_backend(backend);
        if (k_text != "auto" && k_text != "from-labels") {
            try {
                std::size_t pos = 0;
                const long long k = std::stoll(k_text, &pos);
                if (pos != k_text.size() || k < 1) throw std::invalid_argument(k_text);
                config.k = static_cast<std::size_t>(k);
            } catch (const std::exception&) {
                throw mdlgbg::ConfigError("--k must be a positive integer or 'auto', got '" + k_text + "'");
            }
        }
        config.runs = runs;
        config.seed = seed;
        config.normalize = !no_normalize;
        config.n_min = n_min;
        config.k0 = k0;
        config.weight_by_size = weight_by_size;
        config.record_timings = !no_timings;

        const auto report = mdlgbg::run_pipeline(config);
        const std::string text = format == "csv"
                                     ? mdlgbg::report_csv_header() + mdlgbg::report_csv_row(report)
                                     : mdlgbg::report_to_json(report);
        if (output.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(output, std::ios::binary);
            if (!out) throw mdlgbg::ConfigError("cannot write '" + output + "'");
            out << text;
        }
    } catch (const mdlgbg::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const mdlgbg::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 3;
    } catch (const mdlgbg::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 4;
    }
    return 0;
}
