#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "ufc/cli/session.hpp"

namespace {

ufc::cli::Status emit(ufc::cli::Session& s, std::string_view line, std::size_t lineno, ufc::cli::Status acc) {
    const auto r = s.run_line(line, lineno);
    if (!r) return acc;
    std::cout << r->doc.dump() << '\n';
    return ufc::cli::combine(acc, r->status);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Query filters and ultrafilters on the natural numbers"};
    ufc::Config cfg;
    std::string script;
    std::vector<std::string> words;
    app.add_option("--bound", cfg.oracle_bound, "oracle and search bound")->check(CLI::PositiveNumber);
    app.add_option("--depth", cfg.depth_limit, "chain depth limit")->check(CLI::PositiveNumber);
    app.add_option("--script", script, "file with one command per line")->check(CLI::ExistingFile);
    app.add_option("command", words, "a single command; read from standard input when absent");
    app.allow_extras(false);
    app.prefix_command(false);
    CLI11_PARSE(app, argc, argv);

    ufc::cli::Session session(cfg);
    ufc::cli::Status status = ufc::cli::Status::Decided;
    if (!script.empty()) {
        std::ifstream in(script);
        std::string line;
        for (std::size_t n = 1; std::getline(in, line); ++n) status = emit(session, line, n, status);
    } else if (!words.empty()) {
        std::string line;
        for (const auto& w : words) line += (line.empty() ? "" : " ") + w;
        status = emit(session, line, 1, status);
    } else {
        std::string line;
        for (std::size_t n = 1; std::getline(std::cin, line); ++n) status = emit(session, line, n, status);
    }
    return static_cast<int>(status);
}
