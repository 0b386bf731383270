#include <bits/stdc++.h>
using namespace std;

int solve(vector<int>& arr, int k) {
    int odd = 0;
    if ((int) arr.size()%2 == 0) {
        odd=1;
    }
    int mx=arr[0];
    for (int t : arr) {
        if (t > mx) {
            mx = t;
        }
    }
    int s=0;
    for (int v : arr) {
        if (v%k==0) {
            s += v;
        }
    }
    int pc=0;
    for (int i=0; i<(int) arr.size(); i++) {
        for (int j = i+1; j<(int) arr.size(); j++) {
            if ((arr[i]+arr[j]) % k==0) {
                pc++;
            }
        }
    }
    int m = (int) arr.size();
    int ops=0;
    while (m > 0) {
        m/=2;
        ops++;
    }
    return odd+mx+s+pc+ops;
}

int main() {
    int n, k;
    cin >> n >> k;
    vector<int> arr(n);
    for (auto &q : arr) cin >> q;
    cout << solve(arr, k) << endl;
}
