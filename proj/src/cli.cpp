// SPDX-License-Identifier: Apache-2.0
#include "olg/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <thread>

#include "olg/analyzer.hpp"
#include "olg/diff.hpp"
#include "olg/errors.hpp"
#include "olg/fetch.hpp"
#include "olg/pipeline.hpp"
#include "olg/version.hpp"

namespace fs = std::filesystem;

namespace olg {

namespace {

class IoError : public Error {
  public:
    using Error::Error;
};

std::string read_file(const fs::path& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw IoError(path.string() + ": cannot open file");
    std::string text((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
    if (file.bad()) throw IoError(path.string() + ": read error");
    return text;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError(path.string() + ": cannot open for writing");
    file << text;
    if (!file) throw IoError(path.string() + ": write error");
}

std::string read_input(const std::string& input, std::istream& in) {
    if (input == "-") return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (is_url(input)) return fetch_url(input);
    return read_file(input);
}

unsigned default_jobs() {
    if (const char* env = std::getenv("OLG_JOBS")) {
        try {
            const auto jobs = std::stoul(env);
            if (jobs > 0) return static_cast<unsigned>(jobs);
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// Prefixes the message with the input name and position when known.
int report_error(std::ostream& err, const std::string& name, const std::exception& e) {
    if (const auto* syntax = dynamic_cast<const SyntaxError*>(&e)) {
        err << name;
        if (syntax->line() > 0) err << ':' << syntax->line() << ':' << syntax->column();
        err << ": " << syntax->what() << '\n';
        return kExitParse;
    }
    if (dynamic_cast<const IoError*>(&e) || dynamic_cast<const FetchError*>(&e)) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
    err << name << ": " << e.what() << '\n';
    return dynamic_cast<const Error*>(&e) ? kExitParse : kExitIo;
}

struct GenerateArgs {
    std::string input;
    std::string output;
    std::string format;
    bool diff = false;
    std::string stats;
    bool allow_unmapped = false;
};

int generate(const GenerateArgs& args, std::istream& in, std::ostream& out, std::ostream& err) {
    const auto name = args.input == "-" ? std::string("<stdin>") : args.input;
    try {
        std::optional<DocFormat> format;
        if (!args.format.empty()) format = parse_format(args.format);
        const auto text = read_input(args.input, in);
        GenerationOptions options;
        options.require_mapping = !args.allow_unmapped;
        auto run = run_generate(text, format, options, name);

        if (args.output.empty()) {
            out << run.document_text;
            out.flush();
        } else {
            write_file(args.output, run.document_text);
        }
        if (args.diff) err << run.diff;
        if (args.stats == "text") err << summarize(run.result.report, SummaryMode::text);
        if (args.stats == "json") err << summarize(run.result.report, SummaryMode::json);
        return kExitOk;
    } catch (const std::exception& e) {
        return report_error(err, name, e);
    }
}

int analyze(const std::string& input, bool table, std::istream& in, std::ostream& out, std::ostream& err) {
    const auto name = input == "-" ? std::string("<stdin>") : input;
    try {
        const auto loaded = parse_document(read_input(input, in));
        const auto report = analyze_document(loaded.document);
        out << (table ? report.to_csv() : report.to_json().dump(2) + "\n");
        return kExitOk;
    } catch (const std::exception& e) {
        return report_error(err, name, e);
    }
}

struct CorpusArgs {
    std::string directory;
    bool with_generator = false;
    bool allow_unmapped = false;
    std::string report;
    bool table = false;
    unsigned jobs = 0;
    double max_size_mb = 20.0;
};

bool is_corpus_file(const fs::path& path) {
    auto ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".json" || ext == ".yaml" || ext == ".yml";
}

int corpus(const CorpusArgs& args, std::ostream& out, std::ostream& err) {
    std::error_code ec;
    if (!fs::is_directory(args.directory, ec)) {
        err << "error: " << args.directory << ": not a directory\n";
        return kExitIo;
    }
    const auto cap = static_cast<std::uintmax_t>(args.max_size_mb * 1024.0 * 1024.0);
    std::vector<fs::path> files;
    for (auto it = fs::recursive_directory_iterator(args.directory, fs::directory_options::skip_permission_denied, ec);
         !ec && it != fs::recursive_directory_iterator(); it.increment(ec)) {
        if (!it->is_regular_file(ec) || !is_corpus_file(it->path())) continue;
        const auto size = it->file_size(ec);
        if (!ec && size > cap) {
            err << "warning: " << it->path().string() << ": skipped, " << size << " bytes exceeds the size cap\n";
            continue;
        }
        files.push_back(it->path());
    }
    if (ec) {
        err << "error: " << args.directory << ": " << ec.message() << '\n';
        return kExitIo;
    }
    std::sort(files.begin(), files.end());

    CorpusOptions options;
    options.run_generator = args.with_generator;
    options.generation.require_mapping = !args.allow_unmapped;
    options.jobs = args.jobs != 0 ? args.jobs : default_jobs();
    const auto report = analyze_corpus(
        files.size(), [&](std::size_t i) { return CorpusInput{files[i].string(), read_file(files[i])}; }, options);

    try {
        const auto json = report.to_json().dump(2) + "\n";
        if (!args.report.empty()) write_file(args.report, json);
        if (args.table) {
            out << report.to_csv();
        } else if (args.report.empty()) {
            out << json;
        }
    } catch (const std::exception& e) {
        return report_error(err, args.report, e);
    }
    err << report.document_total << " documents, " << report.parse_failures << " failed to load\n";
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Adds link definitions to OpenAPI documents and reports GraphQL translation problems", "olg"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate_cmd = app.add_subcommand("generate", "Add links to a document");
    generate_cmd->add_option("input", gen.input, "File path, http(s) URL, or - for stdin")->required();
    generate_cmd->add_option("-o,--output", gen.output, "Write the document here instead of stdout");
    generate_cmd->add_option("--format", gen.format, "Output format (default: the input's)")
        ->check(CLI::IsMember({"json", "yaml"}));
    generate_cmd->add_flag("--diff", gen.diff, "Print a unified diff to stderr");
    generate_cmd->add_option("--stats", gen.stats, "Print statistics to stderr")->check(CLI::IsMember({"text", "json"}));
    generate_cmd->add_flag("--allow-unmapped", gen.allow_unmapped, "Also link pairs that share no parameter");

    std::string analyze_input;
    bool analyze_table = false;
    auto* analyze_cmd = app.add_subcommand("analyze", "Report translation problems of one document");
    analyze_cmd->add_option("input", analyze_input, "File path, http(s) URL, or - for stdin")->required();
    analyze_cmd->add_flag("--table", analyze_table, "CSV table instead of JSON");

    CorpusArgs corp;
    auto* corpus_cmd = app.add_subcommand("corpus", "Aggregate the analysis over a directory of documents");
    corpus_cmd->add_option("directory", corp.directory, "Scanned recursively for *.json, *.yaml, *.yml")->required();
    corpus_cmd->add_flag("--with-generator", corp.with_generator, "Also run the link generator per document");
    corpus_cmd->add_flag("--allow-unmapped", corp.allow_unmapped, "Generator links pairs without shared parameters");
    corpus_cmd->add_option("--report", corp.report, "Write the JSON report to this path");
    corpus_cmd->add_flag("--table", corp.table, "Print the per-property CSV table to stdout");
    corpus_cmd->add_option("-j,--jobs", corp.jobs, "Worker threads (default: OLG_JOBS or all cores)");
    corpus_cmd->add_option("--max-size-mb", corp.max_size_mb, "Skip files larger than this")->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        if (auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front()) err << sub->help();
        return kExitUsage;
    }

    if (generate_cmd->parsed()) return generate(gen, in, out, err);
    if (analyze_cmd->parsed()) return analyze(analyze_input, analyze_table, in, out, err);
    return corpus(corp, out, err);
}

}  // namespace olg
