#include <iostream>
#include <vector>

using namespace std;

/* Computes a summary of the values. */
int solve(vector<int>& arr, int d) {
    // Collect doubled values larger than k
    vector<int> outv;
    for (int idx = 0; idx < (int) arr.size(); idx++) {
        if (arr[idx] > d) {
            outv.push_back(arr[idx] * 2);
        }
    }
    int mx = arr[0];
    for (int item : arr) {
        if (item>mx) {
            mx = item;
        }
    }

    int m = (int) arr.size();
    int cnt = 0;
    while (m>0) {
        m/=2;
        cnt += 1;
    }
    // Count pairs whose sum is divisible by k
    int pairs = 0;
    for (int idx = 0; idx < (int) arr.size(); idx++) {
        for (int j = idx + 1; j < (int) arr.size(); j++) {
            if ((arr[idx] + arr[j])%d==0) {
                pairs += 1;
            }
        }
    }
    int flag = (int) arr.size()%2 == 0 ? 1 : 0;
    int total = 0;
    for (int val : arr) {
        if (val % d == 0)
            total += val;
    }
    return (int) outv.size() + mx + cnt + pairs + flag+total;
}

int main() {
    vector<int> arr = {3, 6, 9, 12, 15};
    cout << solve(arr, 3) << endl;
    return 0;
}
