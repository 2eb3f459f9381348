// Command-line front end: analyze scheme files or catalog entries, dump
// catalog fixtures, list known names.
//
// Exit codes: 0 success, 1 cross-route discrepancy, 2 input error,
// 3 precondition failure (d < 2, repeated dual eigenvalues).

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cometric/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDiscrepancy = 1;
constexpr int kExitInput = 2;
constexpr int kExitPrecondition = 3;

struct Job {
    std::string label;
    cometric::RelationTable table;
};

int run_analyze(const std::vector<std::string>& paths, const std::vector<std::string>& catalogs,
                const cometric::AnalysisOptions& opt, const std::string& format) {
    std::vector<Job> jobs;
    try {
        for (const auto& name : catalogs) {
            cometric::CatalogEntry entry = cometric::catalog_lookup(name);
            jobs.push_back({entry.name, std::move(entry.table)});
        }
        for (const auto& path : paths) jobs.push_back({path, cometric::load_scheme(path)});
    } catch (const cometric::SchemeError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitInput;
    }
    if (jobs.empty()) {
        std::cerr << "error: no input (give a path or --catalog)\n";
        return kExitInput;
    }

    int exit_code = kExitOk;
    for (const auto& job : jobs) {
        try {
            cometric::AnalysisReport rep = cometric::analyze(job.table, opt, job.label);
            std::string rendered = format == "machine" ? cometric::report_machine(rep)
                                                       : cometric::report_text(rep);
            std::cout << rendered;
            if (rep.discrepancy) exit_code = std::max(exit_code, kExitDiscrepancy);
        } catch (const cometric::NotDistinct& ex) {
            std::cerr << job.label << ": " << ex.what() << "\n";
            return kExitPrecondition;
        } catch (const cometric::SchemeError& ex) {
            const std::string msg = ex.what();
            std::cerr << job.label << ": " << msg << "\n";
            return msg.find("d >= 2") != std::string::npos ? kExitPrecondition : kExitInput;
        }
    }
    return exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"association scheme analyzer: spectral data and P-/Q-polynomial detection"};
    app.require_subcommand(1);

    std::vector<std::string> paths;
    std::vector<std::string> catalogs;
    cometric::AnalysisOptions opt;
    std::string e_arg = "all";
    std::string format = "text";

    CLI::App* analyze = app.add_subcommand("analyze", "analyze scheme files or catalog entries");
    analyze->add_option("paths", paths, "scheme files");
    analyze->add_option("--catalog", catalogs, "catalog entry, e.g. petersen or hamming:3,2");
    analyze->add_option("--tol", opt.tol, "numeric tolerance")->check(CLI::PositiveNumber);
    analyze->add_option("--seed", opt.seed, "seed for the generic spectral split");
    analyze->add_option("--e", e_arg, "idempotent index to test, or 'all'");
    analyze->add_option("--format", format, "text | machine")
        ->check(CLI::IsMember({"text", "machine"}));
    analyze->add_option("--digits", opt.digits, "digits in printed matrices")
        ->check(CLI::Range(1, 15));

    std::string dump_name, dump_path;
    CLI::App* dump = app.add_subcommand("dump", "write a catalog entry as a scheme file");
    dump->add_option("name", dump_name, "catalog name")->required();
    dump->add_option("path", dump_path, "output path")->required();

    CLI::App* list = app.add_subcommand("list", "list catalog names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& ex) {
        int rc = app.exit(ex);
        return rc == 0 ? kExitOk : kExitInput;
    }

    if (list->parsed()) {
        for (const auto& name : cometric::catalog_names()) std::cout << name << "\n";
        return kExitOk;
    }
    if (dump->parsed()) {
        try {
            cometric::dump_catalog(dump_name, dump_path);
        } catch (const cometric::SchemeError& ex) {
            std::cerr << "error: " << ex.what() << "\n";
            return kExitInput;
        }
        return kExitOk;
    }

    if (e_arg != "all") {
        try {
            opt.e = std::stoi(e_arg);
        } catch (const std::exception&) {
            std::cerr << "error: --e expects an index or 'all'\n";
            return kExitInput;
        }
        if (opt.e < 1) {
            std::cerr << "error: --e must be >= 1\n";
            return kExitInput;
        }
    }
    return run_analyze(paths, catalogs, opt, format);
}
