#include "mesb/apriori.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "mesb/error.hpp"

namespace mesb {

namespace {

using Indexed = std::vector<int>;  // item indices, sorted ascending

bool contains_all(const Indexed& transaction, const Indexed& items) {
    auto it = transaction.begin();
    for (int item : items) {
        it = std::lower_bound(it, transaction.end(), item);
        if (it == transaction.end() || *it != item) return false;
        ++it;
    }
    return true;
}

int count_support(const std::vector<Indexed>& transactions, const Indexed& items) {
    int support = 0;
    for (const Indexed& t : transactions)
        if (contains_all(t, items)) support += 1;
    return support;
}

} // namespace

ItemsetReport apriori(const TransactionSet& transactions, double min_support_ratio) {
    if (transactions.empty()) throw Error::validation("apriori needs transactions");
    if (!(min_support_ratio > 0.0) || min_support_ratio > 1.0)
        throw Error::validation("min support ratio must be in (0, 1]");

    std::vector<std::string> vocabulary;
    for (const Transaction& t : transactions)
        vocabulary.insert(vocabulary.end(), t.begin(), t.end());
    std::sort(vocabulary.begin(), vocabulary.end());
    vocabulary.erase(std::unique(vocabulary.begin(), vocabulary.end()), vocabulary.end());

    std::vector<Indexed> indexed;
    indexed.reserve(transactions.size());
    for (const Transaction& t : transactions) {
        Indexed row;
        row.reserve(t.size());
        for (const std::string& item : t) {
            auto it = std::lower_bound(vocabulary.begin(), vocabulary.end(), item);
            row.push_back(static_cast<int>(it - vocabulary.begin()));
        }
        std::sort(row.begin(), row.end());
        if (std::adjacent_find(row.begin(), row.end()) != row.end())
            throw Error::validation("transaction items must be unique");
        indexed.push_back(std::move(row));
    }

    const int n = static_cast<int>(transactions.size());
    ItemsetReport report;
    report.transactions = n;
    report.min_support_ratio = min_support_ratio;
    report.min_support_count = std::max(
        1, static_cast<int>(std::ceil(min_support_ratio * n - 1e-9)));

    std::vector<std::pair<Indexed, int>> frequent;
    for (int item = 0; item < static_cast<int>(vocabulary.size()); ++item) {
        Indexed single{item};
        int support = count_support(indexed, single);
        if (support >= report.min_support_count)
            frequent.emplace_back(std::move(single), support);
    }

    while (!frequent.empty()) {
        for (const auto& [items, support] : frequent) {
            FrequentItemset out;
            out.items.reserve(items.size());
            for (int item : items) out.items.push_back(vocabulary[static_cast<std::size_t>(item)]);
            out.support = support;
            out.ratio = static_cast<double>(support) / n;
            report.itemsets.push_back(std::move(out));
        }

        std::map<Indexed, int> level;  // frequent sets of the current size
        for (const auto& [items, support] : frequent) level.emplace(items, support);

        std::vector<std::pair<Indexed, int>> next;
        for (std::size_t a = 0; a < frequent.size(); ++a) {
            for (std::size_t b = a + 1; b < frequent.size(); ++b) {
                const Indexed& lhs = frequent[a].first;
                const Indexed& rhs = frequent[b].first;
                if (!std::equal(lhs.begin(), lhs.end() - 1, rhs.begin(), rhs.end() - 1))
                    continue;
                // The level is sorted, so equal prefixes mean lhs.back() < rhs.back().
                Indexed candidate = lhs;
                candidate.push_back(rhs.back());

                bool closed = true;
                Indexed subset(candidate.begin() + 1, candidate.end());
                for (std::size_t drop = 0; closed && drop < candidate.size(); ++drop) {
                    if (drop > 0) subset[drop - 1] = candidate[drop - 1];
                    if (!level.count(subset)) closed = false;
                }
                if (!closed) continue;

                int support = count_support(indexed, candidate);
                if (support >= report.min_support_count)
                    next.emplace_back(std::move(candidate), support);
            }
        }
        frequent = std::move(next);
    }
    return report;
}

} // namespace mesb
