#pragma once

#include <atomic>
#include <exception>
#include <mutex>

namespace rcpac::parallel {

// Runtime switch for the OpenMP kernels. Results are identical either way;
// parallel reductions are integer counts and totally ordered argmins.
bool enabled();
void set_enabled(bool on);
int max_threads();

// Exceptions must not escape an OpenMP region: kernels funnel them through
// this collector and rethrow the first one after the loop.
class ExceptionCollector {
public:
    template <class F>
    void run(F&& f) noexcept {
        if (failed_.load(std::memory_order_relaxed)) return;
        try {
            f();
        } catch (...) {
            std::lock_guard<std::mutex> guard(mutex_);
            if (!ptr_) {
                ptr_ = std::current_exception();
                failed_.store(true, std::memory_order_relaxed);
            }
        }
    }
    bool failed() const { return failed_.load(std::memory_order_relaxed); }
    void rethrow_if_failed() {
        if (ptr_) std::rethrow_exception(ptr_);
    }

private:
    std::exception_ptr ptr_;
    std::mutex mutex_;
    std::atomic<bool> failed_{false};
};

}  // namespace rcpac::parallel
