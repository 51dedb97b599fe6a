#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pathgen/interpreter.hpp"
#include "pathgen/rng.hpp"
#include "pathgen/sampler.hpp"
#include "pathgen/subject.hpp"

namespace {

using namespace pathgen;

std::vector<std::int64_t> parse_int_list(const std::string& text) {
    std::vector<std::int64_t> values;
    std::istringstream in(text);
    std::string cell;
    while (std::getline(in, cell, ','))
        if (!cell.empty()) values.push_back(std::stoll(cell));
    return values;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Interpreter throughput probe"};
    std::string subject_path, shape_text;
    std::int64_t domain = 1000;
    std::int64_t seed = 1;
    std::int64_t min_ms = 500;
    app.add_option("subject", subject_path, "subject .tp file")->required();
    app.add_option("--shape", shape_text, "comma list, one value per size axis")->required();
    app.add_option("--domain", domain, "element domain [0, D)");
    app.add_option("--seed", seed, "sampling seed");
    app.add_option("--min-ms", min_ms, "keep executing at least this long");
    CLI11_PARSE(app, argc, argv);

    try {
        Subject subject = load_subject(subject_path);
        Shape shape = parse_int_list(shape_text);

        // A fixed pool of inputs so the loop measures execution, not sampling.
        std::vector<InputVector> pool;
        for (int i = 0; i < 128; ++i) {
            SplitMix64 rng(stream_seed(static_cast<std::uint64_t>(seed), 0, i));
            pool.push_back(sample_input(subject.schema, shape, domain, rng));
        }

        using clock = std::chrono::steady_clock;
        auto started = clock::now();
        std::int64_t execs = 0;
        double elapsed_ms = 0.0;
        do {
            const InputVector& input = pool[static_cast<std::size_t>(execs) % pool.size()];
            ExecResult result = execute(subject.program, subject.table, input);
            if (!result.ok()) {
                std::cerr << "benchmark input did not run to completion\n";
                return 3;
            }
            ++execs;
            elapsed_ms = std::chrono::duration<double, std::milli>(clock::now() - started).count();
        } while (elapsed_ms < static_cast<double>(min_ms));

        std::string shape_label;
        for (std::size_t i = 0; i < shape.size(); ++i) {
            if (i) shape_label += "x";
            shape_label += std::to_string(shape[i]);
        }
        std::cout << "subject=" << subject.name << " shape=" << shape_label << " execs=" << execs
                  << " elapsed_ms=" << std::llround(elapsed_ms)
                  << " rate=" << std::llround(execs / elapsed_ms * 1000.0) << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
