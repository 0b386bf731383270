#include <iostream>
#include <vector>

using namespace std;

int analyzeValues(vector<int>& nums, int k) {
    int parityFlag = (int) nums.size() % 2 == 0 ? 1 : 0;

    // Collect doubled values larger than k
    vector<int> doubledValues;
    for (int index = 0; index < (int) nums.size(); index++) {
        if (nums[index] > k) {
            doubledValues.push_back(nums[index] * 2);
        }
    }
    // Count pairs whose sum is divisible by k
    int pairCount = 0;
    for (int index = 0; index < (int) nums.size(); index++) {
        for (int j = index + 1; j < (int) nums.size(); j++) {
            if ((nums[index] + nums[j]) % k == 0) {
                pairCount += 1;
            }
        }
    }

    // Count how many times the size can be halved
    int currentSize = (int) nums.size();
    int stepCount = 0;
    while (currentSize > 0) {
        currentSize /= 2;
        stepCount += 1;
    }

    int largest = nums[0];
    for (int current : nums) {
        if (current > largest) {
            largest = current;
        }
    }
    return parityFlag + (int) doubledValues.size() + pairCount + stepCount + largest;
}

int main() {
    vector<int> nums = {3, 6, 9, 12, 15};
    cout << analyzeValues(nums, 3) << endl;
    return 0;
}
