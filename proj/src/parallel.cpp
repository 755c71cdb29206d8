#include "kloospow/parallel.hpp"

#include <cstdlib>
#include <string>

namespace kloospow {

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) {
        return requested;
    }
    if (const char* env = std::getenv("KLOOSPOW_THREADS")) {
        try {
            const unsigned long n = std::stoul(env);
            if (n > 0) {
                return static_cast<unsigned>(n);
            }
        } catch (const std::exception&) {
            // unparsable values fall through to the hardware default
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

} // namespace kloospow
