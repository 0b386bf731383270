#include <bits/stdc++.h>
using namespace std;

int solve(vector<int>& nums, int k) {
    int parity = (int) nums.size() % 2 == 0 ? 1 : 0;
    int pairs = 0;
    for (int idx = 0; idx < (int) nums.size(); idx++) {
        for (int j = idx + 1; j < (int) nums.size(); j++) {
            if ((nums[idx]+nums[j]) % k == 0) {
                pairs += 1;
            }
        }
    }

    int rem = (int) nums.size();
    int steps = 0;
    while (rem > 0) {
        rem /= 2;
        steps += 1;
    }
    return parity + pairs + steps;
}

int main() {
    int n, k;
    cin >> n >> k;
    vector<int> nums(n);
    for (auto &q : nums) cin >> q;
    cout << solve(nums, k) << endl;
}
