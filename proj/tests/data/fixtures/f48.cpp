#include <iostream>
#include <vector>

using namespace std;

bool isValid(int value, int divisor) {
    return value % divisor == 0;
}

int analyzeValues(vector<int>& nums, int divisor) {
    // Count pairs whose sum is divisible by k
    int validPairs = 0;
    for (int index = 0; index < (int) nums.size(); index++) {
        for (int otherIndex = index + 1; otherIndex < (int) nums.size(); ++otherIndex) {
            if ((nums[index] + nums[otherIndex]) % divisor == 0) {
                validPairs += 1;
            }
        }
    }
    int total = 0;
    for (int value : nums) {
        if (isValid(value, divisor)) {
            total += value;
        }
    }
    int isEvenLength = (int) nums.size() % 2 == 0 ? 1 : 0;

    // Count how many times the size can be halved
    int currentSize = (int) nums.size();
    int halvingCount = 0;
    while (currentSize > 0) {
        currentSize /= 2;
        halvingCount += 1;
    }

    return validPairs + total + isEvenLength + halvingCount;
}

int main() {
    vector<int> nums = {3, 6, 9, 12, 15};
    cout << analyzeValues(nums, 3) << endl;
    return 0;
}
