#pragma once

#include <string>
#include <vector>

namespace mesb {

/// One transaction: the distinct card ids present in a deck, sorted.
using Transaction = std::vector<std::string>;
using TransactionSet = std::vector<Transaction>;

struct FrequentItemset {
    std::vector<std::string> items;  // sorted
    int support = 0;
    double ratio = 0.0;
};

struct ItemsetReport {
    int transactions = 0;
    double min_support_ratio = 0.0;
    int min_support_count = 0;
    // Sorted by size, then lexicographically by items; downward closure
    // holds: every subset of a reported itemset is reported.
    std::vector<FrequentItemset> itemsets;
};

inline constexpr double kDefaultMinSupport = 0.5;

/// Classic level-wise Apriori: size-(k+1) candidates joined from frequent
/// size-k sets, pruned by downward closure, counted by transaction scan.
ItemsetReport apriori(const TransactionSet& transactions, double min_support_ratio);

} // namespace mesb
