#include <bits/stdc++.h>
using namespace std;

int solve(vector<int>& v, int k) {
  int sum = 0;
  for (int x : v) {
    if (x % k == 0)
      sum += x;
  }
  int f = (int) v.size()%2==0 ? 1 : 0;
  return sum + f;
}

int main() {
  int n, k;
  cin >> n >> k;
  vector<int> v(n);
  for (auto &q : v) cin >> q;
  cout << solve(v, k) << endl;
}
