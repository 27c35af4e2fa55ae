#pragma once

#include <map>
#include <string>
#include <vector>

#include "pscat/rational.hpp"

namespace pscat {

// alpha_q for q = 1..weight, stored as parts[q-1].
struct Partition {
    std::vector<int> parts;
    int weight = 0;
    int length = 0;

    int alpha(int q) const { return q >= 1 && q <= static_cast<int>(parts.size()) ? parts[q - 1] : 0; }
    Integer factorial() const;  // alpha! = prod alpha_q!
    std::string to_string() const;

    friend bool operator==(const Partition&, const Partition&) = default;
};

// All partitions of p, lexicographic ascending on (alpha_1, alpha_2, ...).
std::vector<Partition> enumerate_partitions(int p);

// Sequence of non-negative integers indexed by k >= 1 with finite support.
class FiniteSupportSequence {
public:
    FiniteSupportSequence() = default;
    FiniteSupportSequence(std::initializer_list<std::pair<const int, int>> init);

    void set(int k, int value);
    int get(int k) const;
    const std::map<int, int>& entries() const { return entries_; }

    long norm() const;       // sum a_k
    Integer factorial() const;  // prod a_k!

private:
    std::map<int, int> entries_;  // only nonzero entries are kept
};

}  // namespace pscat
