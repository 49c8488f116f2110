#include "detail.hpp"

namespace k3lat::kernels {

std::vector<Coords> enumerate_box_serial(const BoxQuery& q)
{
    detail::Box box = detail::prepare_box(q);
    std::vector<Coords> out;
    detail::scan_box(box, 0, box.total, out);
    return out;
}

PrimeResult qr_primes_serial(const PrimeQuery& q)
{
    PrimeResult r;
    for (std::uint64_t p = detail::first_candidate(q.min); p <= q.ceiling && r.primes.size() < q.count;
         p += 8)
        if (detail::qualifies(p, q.values))
            r.primes.push_back(p);
    r.exhausted = r.primes.size() < q.count;
    return r;
}

std::vector<LambdaScanHit> lambda_scan_serial(const LambdaScanQuery& q)
{
    detail::validate(q);
    std::vector<LambdaScanHit> hits;
    for (const auto& x : detail::x_candidates(q))
        detail::scan_candidate(q, x, hits);
    return hits;
}

std::vector<Coords> enumerate_box(const BoxQuery& q, Exec exec)
{
    return exec == Exec::Serial ? enumerate_box_serial(q) : enumerate_box_parallel(q);
}

PrimeResult qr_primes(const PrimeQuery& q, Exec exec)
{
    return exec == Exec::Serial ? qr_primes_serial(q) : qr_primes_parallel(q);
}

std::vector<LambdaScanHit> lambda_scan(const LambdaScanQuery& q, Exec exec)
{
    return exec == Exec::Serial ? lambda_scan_serial(q) : lambda_scan_parallel(q);
}

} // namespace k3lat::kernels
