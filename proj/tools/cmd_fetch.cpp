#include <cstdlib>
#include <iostream>

#include "commands.hpp"
#include "rngprobe/sources.hpp"

namespace rngprobe::cli {

int cmd_fetch(const FetchArgs& args) {
    if (args.bits == 0) throw DomainError("--bits must be positive");
    sources::FetchSession session;
    session.endpoint = args.endpoint;
    session.block_size = args.block_size;
    session.max_attempts = args.max_attempts;
    session.cache_file = args.cache_file;
    if (const char* key = std::getenv(args.api_key_env.c_str())) session.api_key = key;
    if (session.cache_file.has_parent_path()) {
        std::filesystem::create_directories(session.cache_file.parent_path());
    }
    const BitString bits = sources::fetch_qrng(session, args.bits);
    std::cout << session.cache_file.string() << ": " << bits.size() << " bits ("
              << session.received_bytes << " bytes)\n";
    return kOk;
}

}  // namespace rngprobe::cli
