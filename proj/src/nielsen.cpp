#include "ctlink/nielsen.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace ctlink
{

Word free_reduce(const Word& w)
{
    Word out;
    out.reserve(w.size());
    for (int x : w)
    {
        if (x == 0)
            throw std::invalid_argument("generator index 0 is not allowed");
        if (!out.empty() && out.back() == -x)
            out.pop_back();
        else
            out.push_back(x);
    }
    return out;
}

Word inverse(const Word& w)
{
    Word out(w.rbegin(), w.rend());
    for (int& x : out)
        x = -x;
    return out;
}

Word multiply(const Word& a, const Word& b)
{
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    return free_reduce(w);
}

Word parse_word(const std::string& text)
{
    Word w;
    for (char ch : text)
    {
        if (ch == ' ' || ch == '\t' || ch == '1' || ch == '*' || ch == '.')
            continue;
        if (ch >= 'a' && ch <= 'z')
            w.push_back(ch - 'a' + 1);
        else if (ch >= 'A' && ch <= 'Z')
            w.push_back(-(ch - 'A' + 1));
        else
            throw std::invalid_argument(std::string("unexpected character in word: ") + ch);
    }
    return free_reduce(w);
}

std::string word_to_string(const Word& w)
{
    if (w.empty())
        return "1";
    std::string s;
    for (int x : w)
    {
        if (std::abs(x) > 26)
            throw std::invalid_argument("generator index above 26 has no letter");
        s += x > 0 ? static_cast<char>('a' + x - 1) : static_cast<char>('A' - x - 1);
    }
    return s;
}

const char* to_string(TargetKind k) { return k == TargetKind::Free ? "free" : "ab"; }

TargetKind parse_target(const std::string& text)
{
    if (text == "free")
        return TargetKind::Free;
    if (text == "ab" || text == "abelian")
        return TargetKind::FreeAbelian;
    throw std::invalid_argument("unknown target group '" + text + "' (expected free or ab)");
}

Word normalize(const Word& w, TargetKind target, int rank)
{
    for (int x : w)
        if (x == 0 || std::abs(x) > rank)
            throw std::out_of_range("generator " + std::to_string(x) + " outside rank " + std::to_string(rank));
    if (target == TargetKind::Free)
        return free_reduce(w);
    std::vector<long> exps(rank, 0);
    for (int x : w)
        exps[std::abs(x) - 1] += x > 0 ? 1 : -1;
    Word out;
    for (int k = 0; k < rank; ++k)
        for (long e = 0; e < std::labs(exps[k]); ++e)
            out.push_back(exps[k] > 0 ? k + 1 : -(k + 1));
    return out;
}

GroupTuple GroupTuple::normalized() const
{
    GroupTuple t = *this;
    for (auto& e : t.elements)
        e = normalize(e, target, rank);
    return t;
}

int GroupTuple::total_length() const
{
    int n = 0;
    for (const auto& e : elements)
        n += static_cast<int>(e.size());
    return n;
}

bool GroupTuple::operator==(const GroupTuple& o) const
{
    return rank == o.rank && target == o.target && normalized().elements == o.normalized().elements;
}

GroupTuple standard_basis(int rank, TargetKind target)
{
    GroupTuple t{rank, target, {}};
    for (int k = 1; k <= rank; ++k)
        t.elements.push_back({k});
    return t;
}

std::string move_to_string(const Move& m)
{
    switch (m.kind)
    {
    case Move::Kind::Invert:
        return "I " + std::to_string(m.i + 1);
    case Move::Kind::RightMultiply:
        return "R " + std::to_string(m.i + 1) + " " + std::to_string(m.j + 1);
    default:
        return "S " + std::to_string(m.i + 1) + " " + std::to_string(m.j + 1);
    }
}

std::string moves_to_string(const std::vector<Move>& moves)
{
    std::string s;
    for (std::size_t k = 0; k < moves.size(); ++k)
        s += (k ? "; " : "") + move_to_string(moves[k]);
    return s;
}

std::vector<Move> parse_moves(const std::string& text)
{
    std::vector<Move> out;
    std::stringstream all(text);
    std::string item;
    while (std::getline(all, item, ';'))
    {
        std::stringstream in(item);
        std::string kind;
        if (!(in >> kind))
            continue;
        Move m;
        int i = 0, j = 0;
        if (kind == "I" || kind == "i")
        {
            if (!(in >> i))
                throw std::invalid_argument("move '" + item + "' needs an index");
            m = {Move::Kind::Invert, i - 1, i - 1};
        }
        else if (kind == "R" || kind == "r" || kind == "S" || kind == "s")
        {
            if (!(in >> i >> j))
                throw std::invalid_argument("move '" + item + "' needs two indices");
            m = {kind == "R" || kind == "r" ? Move::Kind::RightMultiply : Move::Kind::Swap, i - 1, j - 1};
        }
        else
            throw std::invalid_argument("unknown move '" + kind + "'");
        std::string rest;
        if (in >> rest)
            throw std::invalid_argument("trailing text in move '" + item + "'");
        out.push_back(m);
    }
    return out;
}

GroupTuple apply_move(const GroupTuple& t, const Move& m)
{
    const int n = static_cast<int>(t.elements.size());
    if (m.i < 0 || m.i >= n || (m.kind != Move::Kind::Invert && (m.j < 0 || m.j >= n)))
        throw std::out_of_range("move " + move_to_string(m) + " out of range for a " + std::to_string(n) + "-tuple");
    if (m.kind != Move::Kind::Invert && m.i == m.j)
        throw std::invalid_argument("move " + move_to_string(m) + " needs distinct indices");
    GroupTuple out = t;
    switch (m.kind)
    {
    case Move::Kind::Invert:
        out.elements[m.i] = normalize(inverse(t.elements[m.i]), t.target, t.rank);
        break;
    case Move::Kind::RightMultiply:
        out.elements[m.i] = normalize(multiply(t.elements[m.i], t.elements[m.j]), t.target, t.rank);
        break;
    case Move::Kind::Swap:
        std::swap(out.elements[m.i], out.elements[m.j]);
        break;
    }
    return out;
}

GroupTuple apply_moves(GroupTuple t, const std::vector<Move>& moves)
{
    for (const auto& m : moves)
        t = apply_move(t, m);
    return t;
}

std::vector<Move> inverse_moves(const Move& m)
{
    if (m.kind == Move::Kind::RightMultiply)
        return {{Move::Kind::Invert, m.j, m.j}, m, {Move::Kind::Invert, m.j, m.j}};
    return {m};
}

Word Homomorphism::apply(const Word& w) const
{
    if (static_cast<int>(images.size()) != source_rank)
        throw std::invalid_argument("homomorphism needs one image per source generator");
    Word out;
    for (int x : w)
    {
        if (x == 0 || std::abs(x) > source_rank)
            throw std::out_of_range("generator outside the source rank");
        const Word& img = images[std::abs(x) - 1];
        if (x > 0)
            out.insert(out.end(), img.begin(), img.end());
        else
        {
            auto inv = inverse(img);
            out.insert(out.end(), inv.begin(), inv.end());
        }
    }
    return normalize(out, target, target_rank);
}

GroupTuple Homomorphism::apply(const GroupTuple& t) const
{
    GroupTuple out{target_rank, target, {}};
    for (const auto& e : t.elements)
        out.elements.push_back(apply(e));
    return out;
}

LiftResult lift_moves(const GroupTuple& basis, const GroupTuple& images, const Homomorphism& phi,
                      const std::vector<Move>& moves)
{
    if (basis.target != TargetKind::Free || basis.rank != phi.source_rank)
        throw std::invalid_argument("basis must live in the free group of the homomorphism's source rank");
    if (images.target != phi.target || images.rank != phi.target_rank ||
        images.elements.size() != basis.elements.size())
        throw std::invalid_argument("images do not live in the homomorphism's target");
    LiftResult r{basis.normalized(), images.normalized()};
    auto check = [&](std::size_t step) {
        auto mapped = phi.apply(r.basis);
        if (mapped.elements != r.images.elements)
            throw LiftError("phi(basis) differs from images after " + std::to_string(step) + " moves");
    };
    check(0);
    for (std::size_t k = 0; k < moves.size(); ++k)
    {
        r.basis = apply_move(r.basis, moves[k]);
        r.images = apply_move(r.images, moves[k]);
        check(k + 1);
    }
    if (!is_basis(r.basis))
        throw LiftError("lifted tuple is not a basis");
    return r;
}

namespace
{

using Elements = std::vector<Word>;

int total(const Elements& e)
{
    int n = 0;
    for (const auto& w : e)
        n += static_cast<int>(w.size());
    return n;
}

// Product for (kind, i, j): 0 g_i g_j, 1 g_i g_j^-1, 2 g_j g_i, 3 g_j^-1 g_i.
Word product(const Elements& e, int kind, int i, int j)
{
    switch (kind)
    {
    case 0:
        return multiply(e[i], e[j]);
    case 1:
        return multiply(e[i], inverse(e[j]));
    case 2:
        return multiply(e[j], e[i]);
    default:
        return multiply(inverse(e[j]), e[i]);
    }
}

std::optional<Elements> reducing_move(const Elements& e)
{
    const int n = static_cast<int>(e.size());
    for (int kind = 0; kind < 4; ++kind)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
            {
                if (i == j)
                    continue;
                Word w = product(e, kind, i, j);
                if (w.size() < e[i].size())
                {
                    Elements out = e;
                    out[i] = std::move(w);
                    return out;
                }
            }
    return std::nullopt;
}

Elements canonical(Elements e)
{
    for (auto& w : e)
    {
        Word inv = inverse(w);
        if (inv < w)
            w = std::move(inv);
    }
    std::sort(e.begin(), e.end());
    return e;
}

bool standard(const Elements& e)
{
    std::set<int> letters;
    for (const auto& w : e)
    {
        if (w.size() != 1)
            return false;
        letters.insert(std::abs(w[0]));
    }
    return letters.size() == e.size();
}

} // namespace

bool is_basis(const GroupTuple& t, std::size_t plateau_cap)
{
    if (t.target != TargetKind::Free || static_cast<int>(t.elements.size()) != t.rank)
        return false;
    Elements cur = t.normalized().elements;
    const int n = static_cast<int>(cur.size());
    for (;;)
    {
        for (const auto& w : cur)
            if (w.empty())
                return false;
        if (total(cur) == n)
            return standard(cur);
        if (auto next = reducing_move(cur))
        {
            cur = std::move(*next);
            continue;
        }
        // Level set of equal total length, modulo order and inversion.
        const int level = total(cur);
        std::set<Elements> seen{canonical(cur)};
        std::deque<Elements> queue{cur};
        std::optional<Elements> lower;
        while (!queue.empty() && !lower)
        {
            Elements e = std::move(queue.front());
            queue.pop_front();
            for (int kind = 0; kind < 4 && !lower; ++kind)
                for (int i = 0; i < n && !lower; ++i)
                    for (int j = 0; j < n && !lower; ++j)
                    {
                        if (i == j)
                            continue;
                        Elements next = e;
                        next[i] = product(e, kind, i, j);
                        int len = total(next);
                        if (len < level)
                            lower = std::move(next);
                        else if (len == level && seen.insert(canonical(next)).second)
                        {
                            if (seen.size() > plateau_cap)
                                throw std::runtime_error("Nielsen reduction exceeded its search cap");
                            queue.push_back(std::move(next));
                        }
                    }
        }
        if (!lower)
            return false;
        cur = std::move(*lower);
    }
}

long long abelianized_determinant(const GroupTuple& t)
{
    const int n = t.rank;
    if (static_cast<int>(t.elements.size()) != n)
        throw std::invalid_argument("determinant needs as many elements as the rank");
    std::vector<std::vector<__int128>> m(n, std::vector<__int128>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int x : t.elements[i])
            m[i][std::abs(x) - 1] += x > 0 ? 1 : -1;
    // Bareiss fraction-free elimination.
    int sign = 1;
    __int128 prev = 1;
    for (int k = 0; k < n - 1; ++k)
    {
        if (m[k][k] == 0)
        {
            int p = k + 1;
            while (p < n && m[p][k] == 0)
                ++p;
            if (p == n)
                return 0;
            std::swap(m[p], m[k]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return n == 0 ? 1 : static_cast<long long>(sign * m[n - 1][n - 1]);
}

const char* to_string(SearchResult::Status s)
{
    switch (s)
    {
    case SearchResult::Status::Found:
        return "found";
    case SearchResult::Status::NoneWithinBound:
        return "noneWithinBound";
    default:
        return "capExceeded";
    }
}

SearchResult equivalence_search(const GroupTuple& from, const GroupTuple& to, int max_len, std::size_t cap)
{
    if (from.elements.size() != to.elements.size() || from.rank != to.rank || from.target != to.target)
        throw std::invalid_argument("tuples must have equal arity, rank and target");
    const GroupTuple start = from.normalized();
    const Elements goal = to.normalized().elements;
    const int n = static_cast<int>(start.elements.size());

    std::vector<Move> all;
    for (int i = 0; i < n; ++i)
        all.push_back({Move::Kind::Invert, i, i});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j)
                all.push_back({Move::Kind::RightMultiply, i, j});
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            all.push_back({Move::Kind::Swap, i, j});

    struct Node
    {
        int parent;
        Move move;
    };
    std::map<Elements, int> index{{start.elements, 0}};
    std::vector<Node> nodes{{-1, {}}};
    std::vector<Elements> states{start.elements};
    SearchResult r;
    auto finish = [&](int node) {
        r.status = SearchResult::Status::Found;
        for (int k = node; nodes[k].parent >= 0; k = nodes[k].parent)
            r.moves.push_back(nodes[k].move);
        std::reverse(r.moves.begin(), r.moves.end());
        r.states = states.size();
        return r;
    };
    if (start.elements == goal)
        return finish(0);
    for (std::size_t head = 0; head < states.size(); ++head)
    {
        GroupTuple cur{start.rank, start.target, states[head]};
        for (const auto& m : all)
        {
            auto next = apply_move(cur, m).elements;
            if (total(next) > max_len || index.count(next))
                continue;
            if (states.size() >= cap)
            {
                r.status = SearchResult::Status::CapExceeded;
                r.states = states.size();
                return r;
            }
            int id = static_cast<int>(states.size());
            index.emplace(next, id);
            nodes.push_back({static_cast<int>(head), m});
            states.push_back(next);
            if (next == goal)
                return finish(id);
        }
    }
    r.status = SearchResult::Status::NoneWithinBound;
    r.states = states.size();
    return r;
}

} // namespace ctlink
