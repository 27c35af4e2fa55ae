#include "pscat/partitions.hpp"

#include <functional>

#include "pscat/error.hpp"

namespace pscat {

Integer Partition::factorial() const {
    Integer f = 1;
    for (int a : parts) f *= pscat::factorial(static_cast<unsigned long>(a));
    return f;
}

std::string Partition::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(parts[i]);
    }
    return s + ")";
}

std::vector<Partition> enumerate_partitions(int p) {
    if (p < 0) throw ValidationError("enumerate_partitions: p < 0");
    std::vector<Partition> out;
    std::vector<int> cur(static_cast<std::size_t>(p), 0);
    // alpha_1 varies slowest, so pushing in loop order gives lex order.
    std::function<void(int, int)> rec = [&](int q, int rem) {
        if (q > p) {
            if (rem == 0) {
                Partition a;
                a.parts = cur;
                a.weight = p;
                for (int v : cur) a.length += v;
                out.push_back(std::move(a));
            }
            return;
        }
        for (int k = 0; k * q <= rem; ++k) {
            cur[q - 1] = k;
            rec(q + 1, rem - k * q);
        }
        cur[q - 1] = 0;
    };
    rec(1, p);
    return out;
}

FiniteSupportSequence::FiniteSupportSequence(std::initializer_list<std::pair<const int, int>> init) {
    for (const auto& [k, v] : init) set(k, v);
}

void FiniteSupportSequence::set(int k, int value) {
    if (k < 1) throw ValidationError("sequence index must be >= 1");
    if (value < 0) throw ValidationError("sequence entries must be non-negative");
    if (value == 0)
        entries_.erase(k);
    else
        entries_[k] = value;
}

int FiniteSupportSequence::get(int k) const {
    auto it = entries_.find(k);
    return it == entries_.end() ? 0 : it->second;
}

long FiniteSupportSequence::norm() const {
    long n = 0;
    for (const auto& [k, v] : entries_) n += v;
    return n;
}

Integer FiniteSupportSequence::factorial() const {
    Integer f = 1;
    for (const auto& [k, v] : entries_) f *= pscat::factorial(static_cast<unsigned long>(v));
    return f;
}

}  // namespace pscat
