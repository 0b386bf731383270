#include <bits/stdc++.h>
using namespace std;

int go(vector<int>& v, int k) {
    vector<int> r2;
    for (int i = 0; i<(int) v.size(); i++) {
        if (v[i] > k) {
            r2.push_back(v[i]*2);
        }
    }
    int hi = v[0];
    for (int w : v) {
        if (w>hi) {
            hi = w;
        }
    }
    int tot = 0;
    for (int v2 : v) {
        if (v2 % k == 0) {
            tot += v2;
        }
    }
    int odd=0;
    if ((int) v.size() % 2 == 0) {
        odd=1;
    }
    int r=(int) v.size();
    int c = 0;
    while (r > 0) {
        r/=2;
        c++;
    }
    return (int) r2.size() + hi + tot + odd + c;
}

int main() {
    int n, k;
    cin >> n >> k;
    vector<int> v(n);
    for (auto &q : v) cin >> q;
    cout << go(v, k) << endl;
}
