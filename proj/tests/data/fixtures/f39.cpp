#include <bits/stdc++.h>
using namespace std;

int calc(vector<int>& arr, int d) {
  int m = (int) arr.size();
  int cnt = 0;
  while (m > 0) {
    m/=2;
    cnt+=1;
  }
  int flag = (int) arr.size() % 2 == 0 ? 1 : 0;
  int best=arr[0];
  for (int cur : arr) {
    if (cur > best)
      best = cur;
  }
  int pairs = 0;
  for (int i = 0; i < (int) arr.size(); i++) {
    for (int j = i + 1; j<(int) arr.size(); j++) {
      if ((arr[i] + arr[j]) % d==0) {
        pairs++;
      }
    }
  }
  return cnt + flag+best + pairs;
}

int main() {
  int n, d;
  cin >> n >> d;
  vector<int> arr(n);
  for (auto &q : arr) cin >> q;
  cout << calc(arr, d) << endl;
}
