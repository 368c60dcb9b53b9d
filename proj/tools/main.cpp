#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "rngprobe/error.hpp"

int main(int argc, char** argv) {
    using namespace rngprobe::cli;

    CLI::App app{"Algorithmic randomness test bench for RNG output"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Write raw bit strings from a generator");
    generate->add_option("--kind", gen.kind, "mt19937 | gfsr4 | qrng-http")->required();
    generate->add_option("--label", gen.label, "Sample label (defaults to the kind)");
    generate->add_option("--seed", gen.seed, "Base seed; string i uses seed + i");
    generate->add_option("--count", gen.count, "Number of strings")->check(CLI::PositiveNumber);
    generate->add_option("--length", gen.length_bits, "Bits per string")
        ->check(CLI::PositiveNumber);
    generate->add_option("--out", gen.out_dir, "Output directory");
    generate->add_option("--endpoint", gen.endpoint, "qrng-http service URL");
    generate->add_option("--block-size", gen.block_size, "qrng-http values per request");
    generate->add_option("--cache", gen.cache, "qrng-http raw byte cache file");

    TestArgs test;
    auto* run = app.add_subcommand("test", "Run the randomness tests over a manifest");
    run->add_option("--manifest", test.manifest, "Run manifest (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    run->add_option("--out", test.out_dir, "Override the manifest output directory");
    run->add_option("--jobs", test.jobs, "Worker thread count");
    run->add_option("--carmichael", test.carmichael,
                    "Carmichael numbers: a decimal limit or a list file");
    run->add_option("--loop-to", test.loop_to, "Loop every string to this many bits");
    run->add_flag("--complement", test.complement, "Also test complemented strings");

    CompareArgs cmp;
    auto* compare = app.add_subcommand("compare", "Pairwise statistics over result files");
    compare->add_option("results", cmp.results, "Result files (.jsonl)")
        ->required()
        ->expected(-2)
        ->check(CLI::ExistingFile);
    compare->add_option("--out", cmp.out_dir, "Output directory");
    compare->add_option("--test", cmp.test, "Restrict to one test id");
    compare->add_option("--sig-threshold", cmp.sig_threshold, "Significance level");
    compare->add_option("--normal-threshold", cmp.normal_threshold, "Shapiro-Wilk gate");
    compare->add_flag("--include-self", cmp.include_self, "Add each dataset paired with itself");

    Table1Args tbl;
    auto* table1 = app.add_subcommand("table1", "Violation-likelihood table for the 26 test numbers");
    table1->add_option("--out", tbl.out, "Output CSV path");
    table1->add_option("--results", tbl.results, "Fourth-test result files for observed rates")
        ->check(CLI::ExistingFile);

    FetchArgs fetch;
    auto* fetcher = app.add_subcommand("fetch", "Pull bytes from a QRNG HTTP service");
    fetcher->add_option("--endpoint", fetch.endpoint, "Service URL")->required();
    fetcher->add_option("--bits", fetch.bits, "Bits to fetch")->required();
    fetcher->add_option("--block-size", fetch.block_size, "Values per request");
    fetcher->add_option("--cache", fetch.cache_file, "Raw byte cache file")->required();
    fetcher->add_option("--max-attempts", fetch.max_attempts, "Retries per request");
    fetcher->add_option("--api-key-env", fetch.api_key_env, "Environment variable with the key");

    try {
        app.parse(argc, argv);
        if (*generate) return cmd_generate(gen);
        if (*run) return cmd_test(test);
        if (*compare) return cmd_compare(cmp);
        if (*table1) return cmd_table1(tbl);
        if (*fetcher) return cmd_fetch(fetch);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalidInput;
    } catch (const rngprobe::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return kInvalidInput;
    }
    return kInvalidInput;
}
