#include <iostream>
#include <vector>

using namespace std;

int compute(vector<int>& a, int d) {
    int cnt2 = 0;
    for (int i = 0; i < (int) a.size(); i++) {
        for (int j = i + 1; j < (int) a.size(); j++) {
            if ((a[i] + a[j]) % d == 0) {
                cnt2 += 1;
            }
        }
    }
    // Track the largest value
    int mx = a[0];
    for (int cur : a) {
        if (cur > mx) {
            mx = cur;
        }
    }

    int total = 0;
    for (int num : a) {
        if (num % d == 0) {
            total += num;
        }
    }

    // Collect doubled values larger than k
    vector<int> outv;
    for (int i = 0; i < (int) a.size(); i++) {
        if (a[i] > d) {
            outv.push_back(a[i] * 2);
        }
    }
    // Count how many times the size can be halved
    int m = (int) a.size();
    int steps = 0;
    while (m > 0) {
        m /= 2;
        steps += 1;
    }
    return cnt2 + mx + total + (int) outv.size() + steps;
}

int main() {
    vector<int> a = {3, 6, 9, 12, 15};
    cout << compute(a, 3) << endl;
    return 0;
}
