#include "hypersect/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace hypersect {

unsigned max_threads() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("HYPERSECT_THREADS")) {
        try {
            const long cap = std::stol(env);
            if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
        } catch (const std::exception&) {
            // ignore malformed values
        }
    }
    return hw;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body, bool allow_threads) {
    const std::size_t workers = allow_threads ? std::min<std::size_t>(max_threads(), count / 8) : 1;
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }

    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    const std::size_t block = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            const std::size_t begin = w * block;
            const std::size_t end = std::min(count, begin + block);
            try {
                for (std::size_t i = begin; i < end; ++i) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace hypersect
