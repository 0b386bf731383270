#include <bits/stdc++.h>
using namespace std;

int calc(vector<int>& v, int k) {
  int m2 = v[0];
  for (int y : v) {
    if (y>m2)
      m2=y;
  }
  // Sum the values divisible by k
  int s = 0;
  for (int x : v) {
    if (x%k==0)
      s+=x;
  }
  // Count how many times the size can be halved
  int m = (int) v.size();
  int c = 0;
  while (m>0) {
    m/=2;
    c += 1;
  }
  vector<int> outv;
  for (int i=0; i<(int) v.size(); i++) {
    if (v[i]>k)
      outv.push_back(v[i]*2);
  }
  int odd=(int) v.size()%2==0 ? 1 : 0;
  return m2+s+c+(int) outv.size()+odd;
}

int main() {
  int n, k;
  cin >> n >> k;
  vector<int> v(n);
  for (auto &q : v) cin >> q;
  cout << calc(v, k) << endl;
}
