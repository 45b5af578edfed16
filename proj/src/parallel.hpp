#ifndef MORKIT_SRC_PARALLEL_HPP
#define MORKIT_SRC_PARALLEL_HPP

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace morkit::detail
{

// Runs fn(i) for i in [0, n). Tasks write only to their own slot, so the
// outcome does not depend on the number of threads.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn)
{
    if (threads <= 1 || n <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
        {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;)
        {
            const std::size_t i = next.fetch_add(1);
            if (i >= n)
            {
                return;
            }
            try
            {
                fn(i);
            }
            catch (...)
            {
                std::lock_guard lock(error_mutex);
                if (!error)
                {
                    error = std::current_exception();
                }
            }
        }
    };
    const std::size_t count = std::min<std::size_t>(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(count);
    for (std::size_t t = 0; t < count; ++t)
    {
        pool.emplace_back(worker);
    }
    for (auto& t : pool)
    {
        t.join();
    }
    if (error)
    {
        std::rethrow_exception(error);
    }
}

} // namespace morkit::detail

#endif // MORKIT_SRC_PARALLEL_HPP
