#include <iostream>

#include "commands.hpp"
#include "rngprobe/sources.hpp"

namespace rngprobe::cli {

int cmd_generate(const GenerateArgs& args) {
    records::SampleSpec spec;
    spec.label = args.label.empty() ? args.kind : args.label;
    spec.kind = args.kind;
    spec.seed = args.seed;
    spec.count = args.count;
    spec.length_bits = args.length_bits;
    spec.endpoint = args.endpoint;
    spec.block_size = args.block_size;
    spec.cache = args.cache;
    if (spec.kind == "file") {
        throw DomainError("generate writes files; the file kind only reads them");
    }
    if (spec.count < 1 || spec.length_bits < 1) {
        throw DomainError("count and length must be at least 1");
    }

    std::filesystem::create_directories(args.out_dir);
    const auto strings = realize_sample(spec);
    for (std::size_t i = 0; i < strings.size(); ++i) {
        const auto path = args.out_dir / sample_file_name(spec.label, i);
        store_bits(strings[i], path);
        std::cout << path.string() << " (" << (strings[i].size() + 7) / 8 << " bytes)\n";
    }
    return kOk;
}

}  // namespace rngprobe::cli
