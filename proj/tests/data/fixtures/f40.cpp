#include <bits/stdc++.h>
using namespace std;

int compute(vector<int>& nums, int k) {
    int cnt2 = 0;
    for (int idx=0; idx<(int) nums.size(); ++idx) {
        for (int j = idx+1; j < (int) nums.size(); ++j) {
            if ((nums[idx]+nums[j]) % k == 0) {
                cnt2 += 1;
            }
        }
    }
    int rem=(int) nums.size();
    int count=0;
    while (rem > 0) {
        rem /= 2;
        count++;
    }
    int parity=(int) nums.size()%2 == 0 ? 1 : 0;
    int acc=0;
    for (int val : nums) {
        if (val%k==0) {
            acc += val;
        }
    }
    return cnt2 + count+parity + acc;
}

int main() {
    int n, k;
    cin >> n >> k;
    vector<int> nums(n);
    for (auto &q : nums) cin >> q;
    cout << compute(nums, k) << endl;
}
