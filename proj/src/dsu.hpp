#pragma once

#include <numeric>
#include <vector>

namespace ctlink::detail
{

struct Dsu
{
    std::vector<int> parent;

    explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    int find(int x)
    {
        while (parent[x] != x)
        {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    // Keeps the smaller root so class representatives are the least index.
    void unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return;
        if (b < a)
            std::swap(a, b);
        parent[b] = a;
    }
};

// Numbers the roots of `dsu` over [0, n) in order of first appearance.
inline std::vector<int> number_classes(Dsu& dsu, int n, int& count)
{
    std::vector<int> root_id(n, -1), out(n);
    count = 0;
    for (int i = 0; i < n; ++i)
    {
        int r = dsu.find(i);
        if (root_id[r] < 0)
            root_id[r] = count++;
        out[i] = root_id[r];
    }
    return out;
}

} // namespace ctlink::detail
