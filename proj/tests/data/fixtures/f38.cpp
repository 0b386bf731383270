#include <bits/stdc++.h>
using namespace std;

int calc(vector<int>& v, int k) {
  // Count how many times the size can be halved
  int z=(int) v.size();
  int cnt = 0;
  while (z > 0) {
    z /= 2;
    cnt++;
  }
  // Sum the values divisible by k
  int sum = 0;
  for (int x : v) {
    if (x % k==0)
      sum += x;
  }
  vector<int> outv;
  for (int i=0; i < (int) v.size(); i++) {
    if (v[i]>k) {
      outv.push_back(v[i]*2);
    }
  }
  int cp=0;
  for (int i=0; i<(int) v.size(); i++) {
    for (int j=i + 1; j<(int) v.size(); j++) {
      if ((v[i]+v[j]) % k==0) {
        cp++;
      }
    }
  }
  int mx = v[0];
  for (int y : v) {
    if (y > mx) {
      mx = y;
    }
  }
  return cnt+sum + (int) outv.size() + cp+mx;
}

int main() {
  int n, k;
  cin >> n >> k;
  vector<int> v(n);
  for (auto &q : v) cin >> q;
  cout << calc(v, k) << endl;
}
