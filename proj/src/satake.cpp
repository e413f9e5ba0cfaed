#include "jrfl/satake.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "jrfl/errors.hpp"

namespace jrfl {

long long Coweight::total() const { return std::accumulate(parts.begin(), parts.end(), 0LL); }

bool Coweight::is_dominant() const { return std::is_sorted(parts.rbegin(), parts.rend()); }

long long Coweight::two_rho_pairing() const {
    const int n = rank();
    long long s = 0;
    for (int i = 0; i < n; ++i) s += static_cast<long long>(n - 1 - 2 * i) * parts[i];
    return s;
}

std::vector<int> Coweight::root_pairings() const {
    std::vector<int> out;
    for (int i = 0; i + 1 < rank(); ++i) out.push_back(parts[i] - parts[i + 1]);
    return out;
}

std::vector<long long> Coweight::recentred_scaled() const {
    std::vector<long long> out;
    const long long t = total();
    for (int v : parts) out.push_back(static_cast<long long>(rank()) * v - t);
    return out;
}

std::string Coweight::to_string() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << parts[i];
    os << ")";
    return os.str();
}

Coweight Coweight::from_root_pairings(const std::vector<int>& pairings) {
    Coweight c;
    c.parts.assign(pairings.size() + 1, 0);
    for (int i = static_cast<int>(pairings.size()) - 1; i >= 0; --i) c.parts[i] = c.parts[i + 1] + pairings[i];
    if (!c.is_dominant()) throw std::invalid_argument("root pairings of a dominant coweight must be >= 0");
    return c;
}

Coweight Coweight::parse(const std::string& text) {
    Coweight c;
    std::string body = text;
    body.erase(std::remove_if(body.begin(), body.end(), [](char ch) { return ch == '(' || ch == ')' || ch == ' '; }),
               body.end());
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            c.parts.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw ConfigError("cannot parse coweight '" + text + "'");
        }
    }
    if (c.parts.empty()) throw ConfigError("empty coweight '" + text + "'");
    if (!c.is_dominant()) throw ConfigError("coweight '" + text + "' is not dominant (weakly decreasing)");
    return c;
}

Rational evaluate(const IntPolynomial& p, const Rational& t) {
    Rational acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + Rational(*it);
    return acc;
}

bool dominance_leq(const Coweight& mu, const Coweight& lambda) {
    if (mu.rank() != lambda.rank()) throw SumMismatch("coweights of different rank");
    if (mu.total() != lambda.total())
        throw SumMismatch("dominance needs equal totals: " + mu.to_string() + " vs " + lambda.to_string());
    long long a = 0, b = 0;
    for (int i = 0; i < mu.rank(); ++i) {
        a += mu.parts[i];
        b += lambda.parts[i];
        if (a > b) return false;
    }
    return true;
}

bool sigma_out_fixed(const Coweight& lambda) {
    const int n = lambda.rank();
    for (int i = 0; i < n; ++i)
        if (lambda.parts[i] + lambda.parts[n - 1 - i] != lambda.parts[0] + lambda.parts[n - 1]) return false;
    return true;
}

namespace {

void fill_tableaux(const std::vector<int>& shape, std::vector<int>& remaining, std::vector<std::vector<int>>& rows,
                   int row, int col, std::vector<std::vector<int>>& out) {
    if (row == static_cast<int>(shape.size())) {
        std::vector<int> word;
        for (int r = static_cast<int>(rows.size()) - 1; r >= 0; --r)
            for (int v : rows[r]) word.push_back(v);
        out.push_back(std::move(word));
        return;
    }
    if (col == shape[row]) {
        fill_tableaux(shape, remaining, rows, row + 1, 0, out);
        return;
    }
    int low = col > 0 ? rows[row][col - 1] : 1;
    if (row > 0) low = std::max(low, rows[row - 1][col] + 1);
    for (int v = low; v <= static_cast<int>(remaining.size()); ++v) {
        if (remaining[v - 1] == 0) continue;
        --remaining[v - 1];
        rows[row][col] = v;
        fill_tableaux(shape, remaining, rows, row, col + 1, out);
        ++remaining[v - 1];
    }
}

}  // namespace

std::vector<std::vector<int>> tableau_reading_words(const std::vector<int>& shape, const std::vector<int>& content) {
    std::vector<std::vector<int>> out;
    if (std::accumulate(shape.begin(), shape.end(), 0) != std::accumulate(content.begin(), content.end(), 0))
        return out;
    std::vector<int> remaining = content;
    std::vector<std::vector<int>> rows;
    for (int len : shape) rows.emplace_back(static_cast<std::size_t>(std::max(len, 0)), 0);
    fill_tableaux(shape, remaining, rows, 0, 0, out);
    return out;
}

int charge(const std::vector<int>& word) {
    std::vector<bool> used(word.size(), false);
    std::size_t left = word.size();
    int total = 0;
    while (left > 0) {
        int top = 0;
        for (std::size_t i = 0; i < word.size(); ++i)
            if (!used[i]) top = std::max(top, word[i]);
        int pos = -1;
        for (int i = static_cast<int>(word.size()) - 1; i >= 0; --i)
            if (!used[i] && word[i] == 1) {
                pos = i;
                break;
            }
        if (pos < 0) throw std::invalid_argument("charge needs a word with partition content");
        used[pos] = true;
        --left;
        int index = 0;
        for (int letter = 2; letter <= top; ++letter) {
            int found = -1;
            for (int i = pos - 1; i >= 0; --i)
                if (!used[i] && word[i] == letter) {
                    found = i;
                    break;
                }
            if (found < 0) {
                for (int i = static_cast<int>(word.size()) - 1; i > pos; --i)
                    if (!used[i] && word[i] == letter) {
                        found = i;
                        break;
                    }
                ++index;
            }
            if (found < 0) throw std::invalid_argument("charge needs a word with partition content");
            used[found] = true;
            --left;
            total += index;
            pos = found;
        }
    }
    return total;
}

IntPolynomial kostka_foulkes(const Coweight& lambda, const Coweight& mu) {
    if (!dominance_leq(mu, lambda)) return {};
    if (!lambda.is_dominant() || !mu.is_dominant()) throw std::invalid_argument("kostka_foulkes needs dominant coweights");
    static std::mutex mutex;
    static std::map<std::pair<std::vector<int>, std::vector<int>>, IntPolynomial> cache;
    const int shift = -std::min(lambda.parts.back(), mu.parts.back());
    std::vector<int> shape, content;
    for (int v : lambda.parts) shape.push_back(v + shift);
    for (int v : mu.parts)
        if (v + shift > 0) content.push_back(v + shift);
    auto key = std::make_pair(shape, content);
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    IntPolynomial poly;
    for (const auto& word : tableau_reading_words(shape, content)) {
        int c = charge(word);
        if (static_cast<int>(poly.size()) <= c) poly.resize(c + 1, 0);
        ++poly[c];
    }
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(key, poly);
    return poly;
}

IntPolynomial stalk_polynomial(const Coweight& lambda, const Coweight& mu) {
    IntPolynomial k = kostka_foulkes(lambda, mu);
    const long long shift = (lambda.two_rho_pairing() - mu.two_rho_pairing()) / 2;
    IntPolynomial p(static_cast<std::size_t>(shift + 1), 0);
    for (std::size_t i = 0; i < k.size(); ++i)
        if (k[i] != 0) p[static_cast<std::size_t>(shift) - i] = k[i];
    while (p.size() > 1 && p.back() == 0) p.pop_back();
    return p;
}

Rational satake_value(const Coweight& lambda, const Coweight& mu, long long q) {
    const long long two_rho = lambda.two_rho_pairing();
    if (two_rho % 2 != 0) throw NotIntegral("<rho, lambda> is not an integer for " + lambda.to_string());
    const long long rho = two_rho / 2;
    Rational value = evaluate(stalk_polynomial(lambda, mu), Rational(q));
    Rational scale = 1;
    for (long long k = 0; k < (rho < 0 ? -rho : rho); ++k) scale *= q;
    return rho >= 0 ? value / scale : value * scale;
}

Coweight spherical_transfer(const Coweight& lambda) {
    if (!sigma_out_fixed(lambda)) throw NotSigmaOutFixed("coweight " + lambda.to_string() + " is not sigma_Out-fixed");
    return lambda;
}

namespace {

void dominant_rec(const Coweight& lambda, std::vector<int>& cur, long long remaining, int upper,
                  std::vector<Coweight>& out) {
    const int n = lambda.rank();
    const int i = static_cast<int>(cur.size());
    if (i == n - 1) {
        if (remaining <= upper) {
            cur.push_back(static_cast<int>(remaining));
            Coweight c{cur};
            if (c.is_dominant() && dominance_leq(c, lambda)) out.push_back(c);
            cur.pop_back();
        }
        return;
    }
    for (int v = upper; v >= lambda.parts.back(); --v) {
        cur.push_back(v);
        dominant_rec(lambda, cur, remaining - v, v, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Coweight> dominant_below(const Coweight& lambda) {
    std::vector<Coweight> out;
    std::vector<int> cur;
    if (lambda.rank() == 1) return {lambda};
    dominant_rec(lambda, cur, lambda.total(), lambda.parts.front(), out);
    return out;
}

}  // namespace jrfl
