#include "detail.hpp"

#include <exception>
#include <omp.h>

namespace k3lat::kernels {

namespace {

// Exceptions must not escape an OpenMP region; keep the first one and
// rethrow it on the calling thread.
class ErrorSlot {
public:
    template <class F>
    void run(F&& f)
    {
        try {
            f();
        } catch (...) {
#pragma omp critical(k3lat_error_slot)
            if (!error_)
                error_ = std::current_exception();
        }
    }
    void rethrow() const
    {
        if (error_)
            std::rethrow_exception(error_);
    }

private:
    std::exception_ptr error_;
};

} // namespace

int worker_count()
{
    return omp_get_max_threads();
}

std::vector<Coords> enumerate_box_parallel(const BoxQuery& q)
{
    detail::Box box = detail::prepare_box(q);
    const int workers = omp_get_max_threads();
    std::vector<std::vector<Coords>> parts(workers);
    ErrorSlot err;
#pragma omp parallel num_threads(workers)
    {
        const int tid = omp_get_thread_num();
        const int nt = omp_get_num_threads();
        const std::uint64_t chunk = box.total / nt + (box.total % nt != 0);
        const std::uint64_t begin = std::min<std::uint64_t>(box.total, chunk * tid);
        const std::uint64_t end = std::min<std::uint64_t>(box.total, begin + chunk);
        err.run([&] { detail::scan_box(box, begin, end, parts[tid]); });
    }
    err.rethrow();
    std::vector<Coords> out;
    for (auto& p : parts)
        out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    return out;
}

PrimeResult qr_primes_parallel(const PrimeQuery& q)
{
    constexpr std::uint64_t block = 2048; // candidates per block
    const int workers = omp_get_max_threads();
    PrimeResult r;
    std::uint64_t start = detail::first_candidate(q.min);
    while (r.primes.size() < q.count && start <= q.ceiling) {
        const std::int64_t nblocks = workers * 4;
        std::vector<std::vector<std::uint64_t>> found(nblocks);
        ErrorSlot err;
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
        for (std::int64_t b = 0; b < nblocks; ++b) {
            err.run([&] {
                const std::uint64_t lo = start + static_cast<std::uint64_t>(b) * block * 8;
                for (std::uint64_t i = 0; i < block; ++i) {
                    const std::uint64_t p = lo + 8 * i;
                    if (p > q.ceiling)
                        break;
                    if (detail::qualifies(p, q.values))
                        found[b].push_back(p);
                }
            });
        }
        err.rethrow();
        for (const auto& f : found)
            for (auto p : f)
                if (r.primes.size() < q.count)
                    r.primes.push_back(p);
        start += static_cast<std::uint64_t>(nblocks) * block * 8;
    }
    r.exhausted = r.primes.size() < q.count;
    return r;
}

std::vector<LambdaScanHit> lambda_scan_parallel(const LambdaScanQuery& q)
{
    detail::validate(q);
    const auto xs = detail::x_candidates(q);
    std::vector<std::vector<LambdaScanHit>> per(xs.size());
    ErrorSlot err;
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(xs.size()); ++i)
        err.run([&] { detail::scan_candidate(q, xs[i], per[i]); });
    err.rethrow();
    std::vector<LambdaScanHit> hits;
    for (auto& p : per)
        hits.insert(hits.end(), p.begin(), p.end());
    return hits;
}

} // namespace k3lat::kernels
