#include "kronmom/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <string_view>

namespace kronmom {

unsigned workers_from_env() {
    const char* raw = std::getenv(kThreadsEnvVar);
    if (raw == nullptr) return 1;
    std::string_view text(raw);
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0) return 1;
    return value;
}

}  // namespace kronmom
