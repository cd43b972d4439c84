#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctlink
{

/// Freely reduced word: signed 1-based generator indices (-k is the inverse of k).
using Word = std::vector<int>;

Word free_reduce(const Word& w);
Word inverse(const Word& w);
Word multiply(const Word& a, const Word& b);

/// Letters a..z are generators 1..26, upper case their inverses, "1" the
/// identity; whitespace is ignored.
Word parse_word(const std::string& text);
std::string word_to_string(const Word& w);

enum class TargetKind
{
    Free,
    FreeAbelian
};

const char* to_string(TargetKind k);
TargetKind parse_target(const std::string& text); // "free" or "ab"/"abelian"

/// Normal form in the target: free reduction, or the exponent-sum word
/// a^e1 b^e2 ... for the free abelian group.
Word normalize(const Word& w, TargetKind target, int rank);

struct GroupTuple
{
    int rank = 0; // rank of the ambient group
    TargetKind target = TargetKind::Free;
    std::vector<Word> elements;

    GroupTuple normalized() const;
    int total_length() const;
    bool operator==(const GroupTuple& o) const;
};

GroupTuple standard_basis(int rank, TargetKind target = TargetKind::Free);

/// Moves use 0-based indices; their text form is 1-based ("I 2", "R 1 2", "S 1 2").
struct Move
{
    enum class Kind
    {
        Invert,
        RightMultiply,
        Swap
    };
    Kind kind = Kind::Invert;
    int i = 0;
    int j = 0;

    bool operator==(const Move&) const = default;
};

std::string move_to_string(const Move& m);
std::string moves_to_string(const std::vector<Move>& moves);
std::vector<Move> parse_moves(const std::string& text); // separated by ';'

/// Throws std::out_of_range for bad indices and std::invalid_argument when i == j.
GroupTuple apply_move(const GroupTuple& t, const Move& m);
GroupTuple apply_moves(GroupTuple t, const std::vector<Move>& moves);

/// Sequence undoing m.
std::vector<Move> inverse_moves(const Move& m);

/// Homomorphism out of a free group given by the images of its generators.
struct Homomorphism
{
    int source_rank = 0;
    int target_rank = 0;
    TargetKind target = TargetKind::Free;
    std::vector<Word> images;

    Word apply(const Word& w) const;
    GroupTuple apply(const GroupTuple& t) const;
};

class LiftError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct LiftResult
{
    GroupTuple basis;
    GroupTuple images;
};

/// Applies the same moves to a basis of the free group and to its images;
/// phi-compatibility is checked after every move, and the result is checked
/// to be a basis.
LiftResult lift_moves(const GroupTuple& basis, const GroupTuple& images, const Homomorphism& phi,
                      const std::vector<Move>& moves);

/// Nielsen reduction: greedy length-reducing products g_i g_j^{+-1} or
/// g_j^{+-1} g_i, least (kind, i, j) first, searching the level set of equal
/// total length when stuck. True iff it ends at the standard basis up to
/// order and inversion. Throws std::runtime_error when a level set exceeds the cap.
bool is_basis(const GroupTuple& t, std::size_t plateau_cap = 200000);

/// Exponent-sum matrix determinant (tuple size must equal rank).
long long abelianized_determinant(const GroupTuple& t);

struct SearchResult
{
    enum class Status
    {
        Found,
        NoneWithinBound,
        CapExceeded
    };
    Status status = Status::NoneWithinBound;
    std::vector<Move> moves;
    std::size_t states = 0;
};

const char* to_string(SearchResult::Status s);

/// Breadth-first search over tuples of total length <= max_len. Never claims inequivalence.
SearchResult equivalence_search(const GroupTuple& from, const GroupTuple& to, int max_len,
                                std::size_t cap = 1'000'000);

} // namespace ctlink
