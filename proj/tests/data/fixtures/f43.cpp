#include <iostream>
#include <vector>

using namespace std;

bool isValid(int value, int divisor) {
    return value % divisor == 0;
}

int analyzeValues(vector<int>& nums, int divisor) {
    // Count pairs whose sum is divisible by k
    int pairCount = 0;
    for (int index = 0; index < (int) nums.size(); index++) {
        for (int j = index + 1; j < (int) nums.size(); ++j) {
            if ((nums[index] + nums[j]) % divisor == 0) {
                pairCount += 1;
            }
        }
    }
    int largest = nums[0];
    for (int item : nums) {
        if (item > largest) {
            largest = item;
        }
    }
    int totalSum = 0;
    for (int element : nums) {
        if (isValid(element, divisor)) {
            totalSum += element;
        }
    }
    int remaining = (int) nums.size();
    int halvingCount = 0;
    while (remaining > 0) {
        remaining /= 2;
        halvingCount += 1;
    }
    // Flag even-length input
    int parityFlag = (int) nums.size() % 2 == 0 ? 1 : 0;
    return pairCount + largest + totalSum + halvingCount + parityFlag;
}

int main() {
    vector<int> nums = {3, 6, 9, 12, 15};
    cout << analyzeValues(nums, 3) << endl;
    return 0;
}
